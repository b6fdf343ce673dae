//! `key = value` files pinning default verification parameters.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

const KEYS: &[&str] = &[
    "n-max",
    "order",
    "lambda-max",
    "alpha-set",
    "y-set",
    "mode",
    "seed",
    "trials",
];

/// Blank lines and `#` comments are skipped; keys may use `_` or `-`.
pub fn parse(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("line {}: expected key = value", i + 1);
        };
        let key = k.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            bail!("line {}: unknown key {key:?}", i + 1);
        }
        out.insert(key, v.trim().trim_matches('"').to_string());
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let m = parse("# defaults\nn_max = 4\nalpha-set = \"1,1/2\"  # two values\n\nmode=random\n").unwrap();
        assert_eq!(m["n-max"], "4");
        assert_eq!(m["alpha-set"], "1,1/2");
        assert_eq!(m["mode"], "random");
        assert!(parse("colour = red").is_err());
        assert!(parse("n-max 4").is_err());
    }
}
