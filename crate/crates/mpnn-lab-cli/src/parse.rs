//! Parsers for the little languages the CLI accepts: schedule specs,
//! node lists, and table files.

use anyhow::{bail, Context, Result};
use mpnn_lab::capacity::MpnnSchedule;
use mpnn_lab::protocol::FunctionTable;
use mpnn_lab::NodeSet;

/// Parses a schedule spec like `d=3,w=2,m=2,gamma=0,s=2`.
///
/// `w`, `m`, and `gamma` take either a single value (repeated across all
/// layers) or a `+`-separated per-layer list such as `w=1+2+4`. `m`
/// defaults to `w` (the GIN convention), `gamma` to zero, `s` to 2, and
/// `d` to the length of any list given.
pub fn parse_schedule(spec: &str) -> Result<MpnnSchedule> {
    let mut depth: Option<usize> = None;
    let mut width: Option<Vec<u64>> = None;
    let mut message: Option<Vec<u64>> = None;
    let mut global: Option<Vec<u64>> = None;
    let mut s: u64 = 2;

    for part in spec.split(',') {
        let Some((key, value)) = part.split_once('=') else {
            bail!("schedule field {part:?} is not key=value");
        };
        let parse_list = |value: &str| -> Result<Vec<u64>> {
            value
                .split('+')
                .map(|x| x.trim().parse::<u64>().context("bad schedule number"))
                .collect()
        };
        match key.trim() {
            "d" => depth = Some(value.trim().parse().context("bad depth")?),
            "w" => width = Some(parse_list(value)?),
            "m" => message = Some(parse_list(value)?),
            "gamma" => global = Some(parse_list(value)?),
            "s" => s = value.trim().parse().context("bad alphabet size")?,
            other => bail!("unknown schedule field {other:?}"),
        }
    }

    let Some(width) = width else {
        bail!("schedule needs a width, e.g. w=2");
    };
    let depth = depth.unwrap_or_else(|| {
        width
            .len()
            .max(message.as_ref().map_or(0, Vec::len))
            .max(global.as_ref().map_or(0, Vec::len))
    });
    if depth == 0 {
        bail!("schedule needs d >= 1");
    }
    let stretch = |list: Vec<u64>, name: &str| -> Result<Vec<u64>> {
        if list.len() == depth {
            Ok(list)
        } else if list.len() == 1 {
            Ok(vec![list[0]; depth])
        } else {
            bail!("{name} has {} entries but d = {depth}", list.len())
        }
    };
    let width = stretch(width, "w")?;
    let message = match message {
        Some(m) => stretch(m, "m")?,
        None => width.clone(),
    };
    let global = match global {
        Some(g) => stretch(g, "gamma")?,
        None => vec![0; depth],
    };
    Ok(MpnnSchedule::new(width, message, global, s)?)
}

/// Parses a comma-separated node list like `0,1,4`.
pub fn parse_node_list(text: &str) -> Result<NodeSet> {
    let mut set = NodeSet::new();
    for part in text.split(',') {
        let node: usize = part.trim().parse().context("bad node index")?;
        if node >= 32 {
            bail!("node {node} out of range (graphs stop at 32 nodes)");
        }
        set.insert(node);
    }
    Ok(set)
}

/// Reads a table file: one row per line, comma-separated integers.
pub fn parse_table(text: &str) -> Result<FunctionTable> {
    let mut values = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<u32>> = line
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .with_context(|| format!("table line {}: bad value {x:?}", number + 1))
            })
            .collect();
        values.push(row?);
    }
    Ok(FunctionTable::new(values)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_scalar_and_list_forms() {
        let s = parse_schedule("d=3,w=2,m=2,gamma=0,s=2").unwrap();
        assert_eq!(s.depth(), 3);
        assert_eq!(s.widths(), &[2, 2, 2]);

        let s = parse_schedule("w=1+2+4").unwrap();
        assert_eq!(s.depth(), 3);
        assert_eq!(s.messages(), &[1, 2, 4]);
        assert_eq!(s.globals(), &[0, 0, 0]);

        let s = parse_schedule("d=2,w=4,m=1+2,gamma=1,s=3").unwrap();
        assert_eq!(s.widths(), &[4, 4]);
        assert_eq!(s.messages(), &[1, 2]);
        assert_eq!(s.globals(), &[1, 1]);
        assert_eq!(s.alphabet(), 3);
    }

    #[test]
    fn schedule_rejects_nonsense() {
        assert!(parse_schedule("w=2,d=3,m=1+2").is_err());
        assert!(parse_schedule("d=2").is_err());
        assert!(parse_schedule("w=2,q=1").is_err());
        assert!(parse_schedule("w").is_err());
    }

    #[test]
    fn node_lists() {
        let set = parse_node_list("0, 2,3").unwrap();
        assert!(set.contains(0) && set.contains(2) && set.contains(3));
        assert_eq!(set.len(), 3);
        assert!(parse_node_list("1,x").is_err());
        assert!(parse_node_list("40").is_err());
    }

    #[test]
    fn table_files() {
        let t = parse_table("0,1\n1,0\n").unwrap();
        assert_eq!(t.rows(), 2);
        assert!(parse_table("0,1\n2\n").is_err());
        assert!(parse_table("a,b\n").is_err());
    }
}
