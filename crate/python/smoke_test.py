"""Smoke test for the clairvoyant extension module.

Build first:  maturin develop -m crates/py/Cargo.toml
"""

import clairvoyant as cv

x = cv.BinarySequence("10")
y = cv.BinarySequence("1")
ok, frontier = cv.embeddable_prefix(x, y, 2)
assert ok and frontier == [1], (ok, frontier)
path = cv.extract_embedding(x, y, 2)
assert path.steps == [1] and cv.check_embedding(x, y, path)

ok, _ = cv.embeddable_prefix(cv.BinarySequence("000000"), y, 3)
assert not ok

inner = cv.EmbeddingPath(2, [1, 3])
outer = cv.EmbeddingPath(2, [2, 3, 5])
assert cv.compose_embeddings(inner, outer).steps == [2, 5]

try:
    cv.BinarySequence("01x1")
except ValueError as e:
    assert "offset 2" in str(e)
else:
    raise AssertionError("malformed input accepted")

walls = cv.find_walls(cv.BinarySequence("0001111011100"), 2)
assert all(rank == 4 for _, _, rank in walls) and walls
assert cv.find_walls(cv.BinarySequence("0101010101"), 2) == []

checks = dict(cv.verify_exponents())
assert len(checks) == 13 and all(checks.values())
bad = dict(cv.verify_exponents([("gamma", "0.19")]))
assert [k for k, v in bad.items() if not v] == ["bub-g-f-mod"]

assert cv.level_params(10, 2)["R"] == 35
rows, horizon = cv.level_table(10, 4)
assert len(rows) == 4 and horizon == 0

row = cv.estimate_embed_prob(2, 8, 2000, 7)
again = cv.estimate_embed_prob(2, 8, 2000, 7)
assert row == again and row["ci_low"] <= row["p_hat"] <= row["ci_high"]
assert row["rng_id"] == "chacha8-stream-v1"

print("python smoke test ok", cv.__version__)
