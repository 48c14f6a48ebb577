//! `key=value` config files mirroring the command-line flags.
//!
//! ```text
//! # comment
//! command = closure
//! cell = burau-p7-q29
//! no-timestamp = true
//! label = 2,4
//! ```
//!
//! `command` names the subcommand when none is given on the command line.
//! Every other key becomes `--key=value` unless the flag is already present;
//! `true` and `false` switch boolean flags on or off. Keys may repeat.

use std::ffi::OsString;
use std::path::Path;

use crate::error::CliError;

pub fn parse(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| CliError::Config(format!("line {}: expected key=value", n + 1)))?;
        let k = k.trim();
        if k.is_empty() || k.starts_with('-') {
            return Err(CliError::Config(format!("line {}: bad key '{k}'", n + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Location of `--config` in `args`, with its value.
fn find_config(args: &[String]) -> Option<(usize, usize, String)> {
    args.iter().enumerate().find_map(|(i, a)| {
        if let Some(v) = a.strip_prefix("--config=") {
            Some((i, 1, v.to_string()))
        } else if a == "--config" {
            args.get(i + 1).map(|v| (i, 2, v.clone()))
        } else {
            None
        }
    })
}

fn has_flag(args: &[String], key: &str) -> bool {
    let flag = format!("--{key}");
    args.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")))
}

/// Merges the config file named by `--config`, if any, into `args`.
pub fn merge(args: Vec<OsString>, subcommands: &[&str]) -> Result<Vec<OsString>, CliError> {
    let Ok(mut args) = args.into_iter().map(OsString::into_string).collect::<Result<Vec<String>, _>>() else {
        return Err(CliError::Usage("arguments are not valid UTF-8".into()));
    };
    let Some((at, len, path)) = find_config(&args) else {
        return Ok(args.into_iter().map(Into::into).collect());
    };
    args.drain(at..at + len);
    let text = std::fs::read_to_string(Path::new(&path)).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let explicit = args.clone();
    for (k, v) in parse(&text)? {
        if k == "command" {
            if !args.get(1).is_some_and(|a| subcommands.contains(&a.as_str())) {
                args.insert(1.min(args.len()), v);
            }
            continue;
        }
        if has_flag(&explicit, &k) {
            continue;
        }
        match v.as_str() {
            "true" => args.push(format!("--{k}")),
            "false" => {}
            _ => args.push(format!("--{k}={v}")),
        }
    }
    Ok(args.into_iter().map(Into::into).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(v: Vec<OsString>) -> Vec<String> {
        v.into_iter().map(|s| s.into_string().unwrap()).collect()
    }

    #[test]
    fn parses_pairs() {
        let kv = parse("# c\n\ncommand = dims\nlabel=2,4\n").unwrap();
        assert_eq!(kv, vec![("command".into(), "dims".into()), ("label".into(), "2,4".into())]);
        assert!(parse("oops\n").is_err());
        assert!(parse("--g=2\n").is_err());
    }

    #[test]
    fn explicit_flags_win() {
        let dir = std::env::temp_dir().join(format!("tqft-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("run.conf");
        std::fs::write(&file, "command = dims\ng = 2\np = 5\njson = true\nno-timestamp = false\n").unwrap();
        let args = vec!["tqft".into(), "--p".into(), "7".into(), "--config".into(), file.clone().into()];
        let merged = strings(merge(args, &["dims"]).unwrap());
        assert_eq!(merged, ["tqft", "dims", "--p", "7", "--g=2", "--json"]);
        std::fs::remove_dir_all(dir).unwrap();
    }
}
