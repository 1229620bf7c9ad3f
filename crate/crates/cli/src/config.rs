//! Plain-text key=value run configuration: presets, file loading, and the
//! defaults < file < flags precedence used by every subcommand.

use std::collections::BTreeMap;
use std::fs;

/// Effective configuration: string key/value pairs with sorted keys, so the
/// echo in JSON reports is reproducible byte for byte.
pub type Config = BTreeMap<String, String>;

/// Constructor presets accepted by `--config` for charge and dump-field.
pub const PRESETS: [&str; 6] = ["vortex", "vacuum", "hedgehog", "n3", "skyrme", "monopole"];

fn preset_defaults(name: &str) -> Option<Vec<(&'static str, &'static str)>> {
    let pairs: Vec<(&str, &str)> = match name {
        "vortex" => vec![
            ("preset", "vortex"),
            ("n", "1"),
            ("method", "contour"),
            ("radius", "2"),
            ("n_quad", "64"),
        ],
        "vacuum" => vec![
            ("preset", "vacuum"),
            ("n", "0"),
            ("method", "contour"),
            ("radius", "2"),
            ("n_quad", "64"),
        ],
        "hedgehog" => vec![
            ("preset", "hedgehog"),
            ("n", "1"),
            ("method", "surface-flux"),
            ("radius", "2"),
            ("n_quad", "64"),
        ],
        "n3" => vec![
            ("preset", "n3"),
            ("n", "1"),
            ("method", "surface-flux"),
            ("radius", "2"),
            ("n_quad", "64"),
        ],
        "skyrme" => vec![
            ("preset", "skyrme"),
            ("n", "1"),
            ("method", "volume-density"),
            ("formula", "b-determinant"),
            ("profile", "skyrme-exp"),
            ("scale", "1"),
            ("grid", "-8,8,161"),
        ],
        "monopole" => vec![
            ("preset", "monopole"),
            ("n", "1"),
            ("g", "1"),
            ("method", "surface-flux"),
            ("scale", "1"),
            ("radius", "3"),
            ("n_quad", "48"),
        ],
        _ => return None,
    };
    Some(pairs)
}

/// Parse a key=value file: one pair per line, `#` starts a comment, blank
/// lines ignored.
fn parse_file(path: &str) -> Result<Vec<(String, String)>, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file '{path}': {e}"))?;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("{path}:{}: expected key=value", lineno + 1))?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

/// Resolve `--config` (preset name or file path) into a configuration,
/// checking every key against `allowed`.  A file may itself name a
/// `preset=` to inherit that preset's defaults.
pub fn resolve(arg: &str, allowed: &[&str]) -> Result<Config, String> {
    let mut cfg = Config::new();
    let pairs = if PRESETS.contains(&arg) {
        preset_defaults(arg)
            .unwrap()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    } else {
        let pairs = parse_file(arg)?;
        // Inherit preset defaults first so the file only needs overrides.
        if let Some((_, name)) = pairs.iter().find(|(k, _)| k == "preset") {
            for (k, v) in preset_defaults(name)
                .ok_or_else(|| format!("unknown preset '{name}' in config file"))?
            {
                cfg.insert(k.to_string(), v.to_string());
            }
        }
        pairs
    };
    for (k, v) in pairs {
        if !allowed.contains(&k.as_str()) {
            return Err(format!("unknown config key '{k}'"));
        }
        cfg.insert(k, v);
    }
    Ok(cfg)
}

/// Overlay a flag value (flags win over file and preset values).
pub fn put<T: ToString>(cfg: &mut Config, key: &str, value: &Option<T>) {
    if let Some(v) = value {
        cfg.insert(key.to_string(), v.to_string());
    }
}

pub fn get_str<'c>(cfg: &'c Config, key: &str) -> Result<&'c str, String> {
    cfg.get(key).map(|s| s.as_str()).ok_or_else(|| format!("missing config key '{key}'"))
}

pub fn get_or<'c>(cfg: &'c Config, key: &str, fallback: &'c str) -> &'c str {
    cfg.get(key).map(|s| s.as_str()).unwrap_or(fallback)
}

pub fn get_i32(cfg: &Config, key: &str) -> Result<i32, String> {
    get_str(cfg, key)?
        .parse()
        .map_err(|_| format!("config key '{key}' is not an integer: {}", cfg[key]))
}

pub fn get_f64(cfg: &Config, key: &str) -> Result<f64, String> {
    get_str(cfg, key)?
        .parse()
        .map_err(|_| format!("config key '{key}' is not a number: {}", cfg[key]))
}

pub fn get_usize(cfg: &Config, key: &str) -> Result<usize, String> {
    get_str(cfg, key)?
        .parse()
        .map_err(|_| format!("config key '{key}' is not a count: {}", cfg[key]))
}

pub fn get_f64_or(cfg: &Config, key: &str, fallback: f64) -> Result<f64, String> {
    match cfg.get(key) {
        Some(_) => get_f64(cfg, key),
        None => Ok(fallback),
    }
}

pub fn get_usize_or(cfg: &Config, key: &str, fallback: usize) -> Result<usize, String> {
    match cfg.get(key) {
        Some(_) => get_usize(cfg, key),
        None => Ok(fallback),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn presets_resolve_and_flags_override() {
        let allowed = ["preset", "n", "method", "radius", "n_quad"];
        let mut cfg = resolve("vortex", &allowed).unwrap();
        assert_eq!(get_i32(&cfg, "n").unwrap(), 1);
        put(&mut cfg, "n", &Some(3));
        assert_eq!(get_i32(&cfg, "n").unwrap(), 3);
        assert_eq!(get_str(&cfg, "method").unwrap(), "contour");
    }

    #[test]
    fn files_inherit_their_preset_and_reject_unknown_keys() {
        let dir = std::env::temp_dir();
        let path = dir.join("topodef-config-test.cfg");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "# comment\npreset=hedgehog\nn = 2  # winding").unwrap();
        let allowed = ["preset", "n", "method", "radius", "n_quad"];
        let cfg = resolve(path.to_str().unwrap(), &allowed).unwrap();
        assert_eq!(get_i32(&cfg, "n").unwrap(), 2);
        assert_eq!(get_str(&cfg, "method").unwrap(), "surface-flux");

        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "bogus=1").unwrap();
        assert!(resolve(path.to_str().unwrap(), &allowed).is_err());
        std::fs::remove_file(&path).ok();
    }
}
