//! Bounded-gap embedding as reachability in the grid graph.
//!
//! Row `j` of the graph holds the points `<i, j>`; edges go from `<i, j>` to
//! `<i + d, j + 1>` for `1 <= d <= step_max`, and every edge into a point with
//! `X(i) != Y(j)` is deleted. `Y` embeds into `X` with gaps at most `m` exactly
//! when row `L` is reachable from the origin with `step_max = m`.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::sequence::BinarySequence;

/// The maximum increment per row. The embedding question uses `m`; the base
/// mazery graph uses `3m`. Always passed explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridGraphParams {
    step_max: usize,
}

impl GridGraphParams {
    pub fn new(step_max: usize) -> Result<Self> {
        if step_max == 0 {
            return Err(Error::ZeroStep);
        }
        Ok(GridGraphParams { step_max })
    }

    pub fn step_max(&self) -> usize {
        self.step_max
    }
}

/// Reachable x-coordinates of one row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReachFrontier {
    pub row: usize,
    pub positions: BitSet,
}

impl ReachFrontier {
    /// Row 0: exactly the origin, over x-coordinates `0..capacity`.
    pub fn origin(capacity: usize) -> Self {
        ReachFrontier { row: 0, positions: BitSet::from_positions(capacity.max(1), [0]) }
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.positions.contains(x)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.positions.iter().collect()
    }
}

#[derive(Serialize, Deserialize)]
struct FrontierRepr {
    row: usize,
    positions: Vec<usize>,
}

impl Serialize for ReachFrontier {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FrontierRepr { row: self.row, positions: self.to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ReachFrontier {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FrontierRepr::deserialize(d)?;
        let cap = repr.positions.iter().max().map_or(1, |&p| p + 1);
        Ok(ReachFrontier { row: repr.row, positions: BitSet::from_positions(cap, repr.positions) })
    }
}

/// Witness `(n_1, ..., n_L)` with `n_0 = 0` implied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddingPath {
    #[serde(rename = "m")]
    pub gap_bound: usize,
    pub steps: Vec<usize>,
}

impl EmbeddingPath {
    pub fn new(gap_bound: usize, steps: Vec<usize>) -> Self {
        EmbeddingPath { gap_bound, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Whether the gap constraints `1 <= n_i - n_{i-1} <= m` hold.
    pub fn gaps_valid(&self) -> bool {
        let mut prev = 0usize;
        self.steps.iter().all(|&n| {
            let ok = n > prev && n - prev <= self.gap_bound;
            prev = n;
            ok
        })
    }
}

/// Positions `i` in `1..=|X|` with `X(i) = Y(j)`.
pub fn match_mask(x: &BinarySequence, y: &BinarySequence, j: usize) -> BitSet {
    x.positions_equal(y.get(j))
}

/// Advances a frontier by one row: `{ i in mask : exists i' in prev, 1 <= i - i' <= step_max }`.
pub fn frontier_step(prev: &ReachFrontier, match_mask: &BitSet, step_max: usize) -> ReachFrontier {
    let mut next = prev.positions.clone().resized(match_mask.capacity()).forward_window(step_max);
    next.intersect_with(match_mask);
    ReachFrontier { row: prev.row + 1, positions: next }
}

fn check_prefix(y: &BinarySequence, rows: usize) -> Result<()> {
    if rows > y.len() {
        return Err(Error::InputBounds { requested: rows, available: y.len() });
    }
    Ok(())
}

/// All frontiers for rows `0..=rows`. Positions beyond `|X|` are never reachable.
pub fn reach_rows(x: &BinarySequence, y: &BinarySequence, m: usize, rows: usize) -> Result<Vec<ReachFrontier>> {
    let params = GridGraphParams::new(m)?;
    check_prefix(y, rows)?;
    let mut out = Vec::with_capacity(rows + 1);
    out.push(ReachFrontier::origin(x.len() + 1));
    for j in 1..=rows {
        let prev = out.last().expect("origin row present");
        let next = frontier_step(prev, &match_mask(x, y, j), params.step_max());
        out.push(next);
    }
    Ok(out)
}

/// Outcome of the finite-prefix decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixDecision {
    pub embeddable: bool,
    pub frontier: ReachFrontier,
}

/// Whether `Y(1..=rows)` is `m`-embeddable into the available prefix of `X`.
pub fn embeddable_prefix(x: &BinarySequence, y: &BinarySequence, m: usize, rows: usize) -> Result<PrefixDecision> {
    let params = GridGraphParams::new(m)?;
    check_prefix(y, rows)?;
    let mut frontier = ReachFrontier::origin(x.len() + 1);
    for j in 1..=rows {
        frontier = frontier_step(&frontier, &match_mask(x, y, j), params.step_max());
        if frontier.is_empty() {
            frontier.row = rows;
            break;
        }
    }
    Ok(PrefixDecision { embeddable: !frontier.is_empty(), frontier })
}

/// Recovers a witness by back-tracing stored frontiers; at every row the
/// smallest admissible position is taken.
pub fn extract_embedding(x: &BinarySequence, y: &BinarySequence, m: usize, rows: usize) -> Result<Option<EmbeddingPath>> {
    let frontiers = reach_rows(x, y, m, rows)?;
    let last = frontiers.last().expect("at least the origin row");
    let Some(mut current) = last.positions.first() else {
        return Ok(None);
    };
    let mut steps = vec![0usize; rows];
    for j in (1..=rows).rev() {
        steps[j - 1] = current;
        let lo = current.saturating_sub(m);
        current = (lo..current)
            .find(|&p| frontiers[j - 1].contains(p))
            .expect("every frontier position has a predecessor");
    }
    debug_assert_eq!(current, 0);
    Ok(Some(EmbeddingPath::new(m, steps)))
}

/// Gap constraints plus `Y(i) = X(n_i)` for the whole path.
pub fn check_embedding(x: &BinarySequence, y: &BinarySequence, path: &EmbeddingPath) -> bool {
    if path.gap_bound == 0 || !path.gaps_valid() || path.len() > y.len() {
        return false;
    }
    path.steps
        .iter()
        .enumerate()
        .all(|(i, &n)| n <= x.len() && x.get(n) == y.get(i + 1))
}

/// Composes `inner` (Y into Z) with `outer` (Z into X): `r_i = outer[inner[i]]`.
/// The gap bound of the result is the product of the two bounds.
pub fn compose_embeddings(inner: &EmbeddingPath, outer: &EmbeddingPath) -> Result<EmbeddingPath> {
    let steps = inner
        .steps
        .iter()
        .map(|&k| {
            if k == 0 || k > outer.len() {
                Err(Error::CompositionDomain { index: k, len: outer.len() })
            } else {
                Ok(outer.steps[k - 1])
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EmbeddingPath::new(inner.gap_bound * outer.gap_bound, steps))
}

/// Whether `to` is reachable from `from` using only points `<i, j>` with
/// `from.x < i <= to.x` and `from.y < j <= to.y`, i.e. within the rectangle
/// spanned by the two corners.
pub fn reachable_within(x: &BinarySequence, y: &BinarySequence, step_max: usize, from: Point, to: Point) -> bool {
    if step_max == 0 || to.x < from.x || to.y < from.y || from.x < 0 || from.y < 0 {
        return false;
    }
    if to.y == from.y {
        return to.x == from.x;
    }
    if to.x as usize > x.len() || to.y as usize > y.len() {
        return false;
    }
    let cap = to.x as usize + 1;
    let mut window = BitSet::new(cap);
    window.fill_range(from.x as usize + 1, to.x as usize);
    let mut frontier = ReachFrontier { row: from.y as usize, positions: BitSet::from_positions(cap, [from.x as usize]) };
    for j in from.y as usize + 1..=to.y as usize {
        let mut mask = BitSet::new(cap);
        let symbol = y.get(j);
        for p in window.iter() {
            if x.get(p) == symbol {
                mask.insert(p);
            }
        }
        frontier = frontier_step(&frontier, &mask, step_max);
        if frontier.is_empty() {
            return false;
        }
    }
    frontier.contains(to.x as usize)
}

/// Whether `points` (one per row, starting at row `from.y + 1`) form a path
/// of the grid graph with the given step bound.
pub fn is_grid_path(x: &BinarySequence, y: &BinarySequence, step_max: usize, from: Point, points: &[Point]) -> bool {
    let mut prev = from;
    points.iter().all(|&p| {
        let ok = p.y == prev.y + 1
            && p.x - prev.x >= 1
            && p.x - prev.x <= step_max as i64
            && matches!((x.try_get(p.x), y.try_get(p.y)), (Some(a), Some(b)) if a == b);
        prev = p;
        ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> BinarySequence {
        s.parse().unwrap()
    }

    #[test]
    fn empty_prev_gives_empty() {
        let prev = ReachFrontier { row: 0, positions: BitSet::new(10) };
        let mask = BitSet::from_positions(10, 1..10);
        assert!(frontier_step(&prev, &mask, 3).is_empty());
    }

    #[test]
    fn single_forced_step() {
        let prev = ReachFrontier::origin(10);
        let mask = BitSet::from_positions(10, 1..10);
        assert_eq!(frontier_step(&prev, &mask, 1).to_vec(), vec![1]);
    }

    #[test]
    fn first_row_on_fixed_instance() {
        // X = 0110100110, Y(1) = 1, step 3: ones of X among positions 1..=3.
        let x = seq("0110100110");
        let y = seq("1");
        let next = frontier_step(&ReachFrontier::origin(11), &match_mask(&x, &y, 1), 3);
        assert_eq!(next.to_vec(), vec![2, 3]);
        assert_eq!(next.row, 1);
    }

    #[test]
    fn zero_rows_is_trivially_embeddable() {
        let d = embeddable_prefix(&seq("01"), &seq(""), 2, 0).unwrap();
        assert!(d.embeddable);
        assert_eq!(d.frontier.to_vec(), vec![0]);
    }

    #[test]
    fn symbol_absent_in_window() {
        assert!(!embeddable_prefix(&seq("000000"), &seq("1"), 3, 1).unwrap().embeddable);
    }

    #[test]
    fn prefix_longer_than_y_is_an_error() {
        assert_eq!(
            embeddable_prefix(&seq("01"), &seq("1"), 2, 2),
            Err(Error::InputBounds { requested: 2, available: 1 })
        );
        assert_eq!(embeddable_prefix(&seq("01"), &seq("1"), 0, 1), Err(Error::ZeroStep));
    }

    #[test]
    fn extraction_examples() {
        assert_eq!(extract_embedding(&seq("0101"), &seq("11"), 2, 0).unwrap(), Some(EmbeddingPath::new(2, vec![])));
        assert_eq!(extract_embedding(&seq("10"), &seq("1"), 2, 1).unwrap(), Some(EmbeddingPath::new(2, vec![1])));
        assert_eq!(extract_embedding(&seq("000"), &seq("1"), 2, 1).unwrap(), None);
    }

    #[test]
    fn extraction_prefers_small_positions() {
        // Y = 11 into X = 0111 with m = 3: smallest last position is 3, then 2.
        let p = extract_embedding(&seq("0111"), &seq("11"), 3, 2).unwrap().unwrap();
        assert_eq!(p.steps, vec![2, 3]);
    }

    #[test]
    fn check_examples() {
        assert!(check_embedding(&seq("01"), &seq("1"), &EmbeddingPath::new(1, vec![])));
        assert!(!check_embedding(&seq("01"), &seq("1"), &EmbeddingPath::new(1, vec![2])));
        assert!(check_embedding(&seq("01"), &seq("1"), &EmbeddingPath::new(2, vec![2])));
        assert!(!check_embedding(&seq("01"), &seq("0"), &EmbeddingPath::new(2, vec![2])));
        assert!(!check_embedding(&seq("01"), &seq("1"), &EmbeddingPath::new(2, vec![3])));
    }

    #[test]
    fn compose_examples() {
        let id = EmbeddingPath::new(1, vec![1, 2, 3]);
        assert_eq!(compose_embeddings(&id, &id).unwrap(), id);
        let p1 = EmbeddingPath::new(2, vec![2, 4]);
        let p2 = EmbeddingPath::new(2, vec![1, 2, 4, 5]);
        let r = compose_embeddings(&p1, &p2).unwrap();
        assert_eq!(r, EmbeddingPath::new(4, vec![2, 5]));
        assert!(r.gaps_valid());
        assert_eq!(
            compose_embeddings(&EmbeddingPath::new(2, vec![5]), &p2),
            Err(Error::CompositionDomain { index: 5, len: 4 })
        );
    }

    #[test]
    fn json_shapes() {
        let p = EmbeddingPath::new(3, vec![1, 4]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"m":3,"steps":[1,4]}"#);
        let f = ReachFrontier { row: 2, positions: BitSet::from_positions(8, [3, 5]) };
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"row":2,"positions":[3,5]}"#);
        let back: ReachFrontier = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_vec(), vec![3, 5]);
    }

    #[test]
    fn restricted_reachability() {
        let x = seq("0110100110");
        let y = seq("1101");
        assert!(reachable_within(&x, &y, 3, Point::ORIGIN, Point::ORIGIN));
        assert!(reachable_within(&x, &y, 3, Point::ORIGIN, Point::new(2, 1)));
        // <2,1> -> <3,2> needs X(3)=Y(2)=1: yes.
        assert!(reachable_within(&x, &y, 3, Point::new(2, 1), Point::new(3, 2)));
        // Mismatched endpoint.
        assert!(!reachable_within(&x, &y, 3, Point::ORIGIN, Point::new(1, 1)));
        // Rectangle forbids positions left of from.x.
        assert!(!reachable_within(&x, &y, 3, Point::new(5, 0), Point::new(5, 1)));
    }
}
