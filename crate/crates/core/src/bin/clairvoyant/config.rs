//! `--config FILE`: flat `key=value` lines turned into flags placed before
//! the command-line flags, so that explicit flags win.

use std::fs;

/// Removes `--config FILE` / `--config=FILE` from `args` and splices the
/// file's settings in right after the subcommand.
pub fn expand(args: Vec<String>) -> Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut it = args.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or("--config needs a file")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
    let injected = parse(&text).map_err(|e| format!("{path}: {e}"))?;
    // rest[0] is the program name, rest[1] the subcommand (if any).
    let at = if rest.len() > 1 && !rest[1].starts_with('-') { 2 } else { 1 }.min(rest.len());
    rest.splice(at..at, injected);
    Ok(rest)
}

fn parse(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(format!("line {}: expected key=value", n + 1))?;
        let flag = format!("--{}", k.trim().replace('_', "-"));
        match v.trim() {
            "true" => out.push(flag),
            "false" => {}
            v => {
                out.push(flag);
                out.push(v.to_string());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn settings_go_after_the_subcommand() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.conf");
        fs::write(&p, "# comment\ntrials = 10\nthreads=2\nwitness=true\nquiet=false\n").unwrap();
        let args: Vec<String> =
            ["prog", "simulate", "--config", p.to_str().unwrap(), "--trials", "5"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            expand(args).unwrap(),
            vec!["prog", "simulate", "--trials", "10", "--threads", "2", "--witness", "--trials", "5"]
        );
    }
}
