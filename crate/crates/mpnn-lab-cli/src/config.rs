//! Key-value config files that pre-load command-line flags.
//!
//! A config file holds one `key = value` pair per line (`#` starts a
//! comment). Keys are long flag names without the leading dashes. The
//! pairs are expanded to `--key value` tokens and inserted right after
//! the subcommand, so flags typed on the command line override the file:
//! repeated occurrences of a flag keep the last value.
//!
//! Boolean flags use `key = true` (emitting a bare `--key`) or
//! `key = false` (emitting nothing).

use anyhow::{bail, Context, Result};

/// Finds `--config FILE` in `args`, removes it, and splices the file's
/// flags in right after the subcommand tokens.
pub fn expand_config_args(args: Vec<String>) -> Result<Vec<String>> {
    let Some(position) = args.iter().position(|a| a == "--config") else {
        return Ok(args);
    };
    let Some(path) = args.get(position + 1).cloned() else {
        bail!("--config needs a file path");
    };
    let mut rest: Vec<String> = args;
    rest.drain(position..=position + 1);

    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading config file {path}"))?;
    let injected = parse_config(&text)?;

    // Insert after the leading program/subcommand words: everything up
    // to the first token that starts with '-'.
    let insert_at = rest
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, token)| token.starts_with('-'))
        .map(|(i, _)| i)
        .unwrap_or(rest.len());
    let mut expanded = rest[..insert_at].to_vec();
    expanded.extend(injected);
    expanded.extend(rest[insert_at..].iter().cloned());
    Ok(expanded)
}

fn parse_config(text: &str) -> Result<Vec<String>> {
    let mut tokens = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key = value", number + 1);
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            bail!("config line {}: empty key", number + 1);
        }
        match value {
            "true" => tokens.push(format!("--{key}")),
            "false" => {}
            _ => {
                tokens.push(format!("--{key}"));
                tokens.push(value.to_string());
            }
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn passes_through_without_config() {
        let args = strings(&["mpnn-lab", "bounds", "--n", "8"]);
        assert_eq!(expand_config_args(args.clone()).unwrap(), args);
    }

    #[test]
    fn injects_before_user_flags() {
        let dir = std::env::temp_dir().join("mpnn-lab-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.txt");
        std::fs::write(&path, "n = 8\ns = 4 # comment\nverbose = false\n").unwrap();
        let args = strings(&[
            "mpnn-lab",
            "bounds",
            "--config",
            path.to_str().unwrap(),
            "--n",
            "12",
        ]);
        let expanded = expand_config_args(args).unwrap();
        assert_eq!(
            expanded,
            strings(&["mpnn-lab", "bounds", "--n", "8", "--s", "4", "--n", "12"])
        );
    }

    #[test]
    fn rejects_malformed_lines() {
        let dir = std::env::temp_dir().join("mpnn-lab-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.txt");
        std::fs::write(&path, "just-a-word\n").unwrap();
        let args = strings(&["mpnn-lab", "bounds", "--config", path.to_str().unwrap()]);
        assert!(expand_config_args(args).is_err());
    }
}
