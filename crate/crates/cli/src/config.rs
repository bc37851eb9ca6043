//! Flat `key = value` configuration files.

use std::collections::BTreeMap;
use std::path::Path;

use mlharm::Complex64;

use crate::CliError;

/// Every key the front end understands. A map block may also appear under
/// the `other.` prefix.
const KEYS: &[&str] = &[
    "alpha",
    "beta",
    "gamma",
    "delta",
    "q",
    "p",
    "z",
    "max_terms",
    "m",
    "n",
    "eta",
    "rho",
    "b1",
    "suite",
    "check",
    "test",
    "grid.radii",
    "grid.angles",
];

const MAP_KEYS: &[&str] =
    &["map", "style", "a", "b", "co_sign", "x", "y", "X", "Y", "kind", "index", "order"];

#[derive(Debug, Clone, Default)]
pub struct Config {
    entries: BTreeMap<String, (usize, String)>,
}

fn known(key: &str) -> bool {
    let map_key = key.strip_prefix("other.").unwrap_or(key);
    KEYS.contains(&key) || MAP_KEYS.contains(&map_key)
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {line_no}: expected `key = value`"))
            })?;
            let key = key.trim();
            if !known(key) {
                return Err(CliError::Config(format!("line {line_no}: unknown key `{key}`")));
            }
            if let Some((first, _)) =
                entries.insert(key.to_string(), (line_no, value.trim().to_string()))
            {
                return Err(CliError::Config(format!(
                    "line {line_no}: key `{key}` already set on line {first}"
                )));
            }
        }
        Ok(Self { entries })
    }

    /// Overrides from command-line flags take precedence over the file.
    pub fn set(&mut self, key: &str, value: String) {
        self.entries.insert(key.to_string(), (0, value));
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    fn parsed<T>(
        &self,
        key: &str,
        parse: impl Fn(&str) -> Option<T>,
    ) -> Result<Option<T>, CliError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, v)) => parse(v).map(Some).ok_or_else(|| {
                let at =
                    if *line == 0 { "command line".to_string() } else { format!("line {line}") };
                CliError::Config(format!("{at}: cannot parse `{key} = {v}`"))
            }),
        }
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        self.parsed(key, parse_f64)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        Ok(self.f64(key)?.unwrap_or(default))
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, CliError> {
        self.parsed(key, |s| s.parse().ok())
    }

    pub fn u32(&self, key: &str) -> Result<Option<u32>, CliError> {
        self.parsed(key, |s| s.parse().ok())
    }

    pub fn complex(&self, key: &str) -> Result<Option<Complex64>, CliError> {
        self.parsed(key, parse_complex)
    }

    pub fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        self.parsed(key, |s| parse_list(s, parse_f64))
    }

    pub fn complex_list(&self, key: &str) -> Result<Option<Vec<Complex64>>, CliError> {
        self.parsed(key, |s| parse_list(s, parse_complex))
    }

    pub fn require<T>(&self, key: &str, value: Option<T>) -> Result<T, CliError> {
        value.ok_or_else(|| CliError::Config(format!("missing required key `{key}`")))
    }
}

fn parse_f64(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Comma-separated values; an empty string is an empty list.
pub fn parse_list<T>(s: &str, item: impl Fn(&str) -> Option<T>) -> Option<Vec<T>> {
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|part| item(part.trim())).collect()
}

/// Accepts `a`, `bi`, `a+bi` and `a-bi`, with optional exponents.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return parse_f64(&s).map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| matches!(bytes[j], b'+' | b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        _ => parse_f64(t),
    };
    match split {
        Some(j) => Some(Complex64::new(parse_f64(&body[..j])?, imag(&body[j..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1.5"), Some(Complex64::new(1.5, 0.0)));
        assert_eq!(parse_complex("2i"), Some(Complex64::new(0.0, 2.0)));
        assert_eq!(parse_complex("-i"), Some(Complex64::new(0.0, -1.0)));
        assert_eq!(parse_complex("1-0.5i"), Some(Complex64::new(1.0, -0.5)));
        assert_eq!(parse_complex("1e-3+2E+1i"), Some(Complex64::new(1e-3, 20.0)));
        assert_eq!(parse_complex("-2 + 3i"), Some(Complex64::new(-2.0, 3.0)));
        assert_eq!(parse_complex("abc"), None);
        assert_eq!(parse_complex("1+2"), None);
    }

    #[test]
    fn comments_duplicates_and_unknown_keys() {
        let c = Config::parse("# header\nm = 2 # trailing\n\nother.map = identity\n").unwrap();
        assert_eq!(c.u32("m").unwrap(), Some(2));
        assert_eq!(c.raw("other.map"), Some("identity"));
        assert!(Config::parse("m = 1\nm = 2\n").is_err());
        assert!(Config::parse("mm = 1\n").is_err());
        assert!(Config::parse("m 1\n").is_err());
    }

    #[test]
    fn lists() {
        let c = Config::parse("a = 0.1, 0.2+0.1i\nb =\n").unwrap();
        assert_eq!(c.complex_list("a").unwrap().unwrap().len(), 2);
        assert_eq!(c.complex_list("b").unwrap().unwrap().len(), 0);
        assert!(Config::parse("a = 0.1,,0.2\n").unwrap().complex_list("a").is_err());
    }
}
