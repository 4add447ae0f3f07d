//! Group files: `perm <degree>` followed by one generator per line in cycle
//! notation, or `table <n>` followed by `n` rows of `n` indices.
//! `#` starts a comment.

use std::path::Path;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Perm;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_group(text: &str, order_cap: usize) -> Result<Group> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty group file"))?;
    let mut words = header.split_whitespace();
    let kind = words.next().unwrap_or("");
    let size: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| parse_err(hline, "header needs a size, e.g. `perm 4` or `table 6`"))?;
    if words.next().is_some() {
        return Err(parse_err(hline, "trailing text after header"));
    }
    match kind {
        "perm" => {
            let mut gens = Vec::new();
            for (n, l) in lines {
                gens.push(Perm::parse_cycles(size, l).map_err(|e| parse_err(n, e.to_string()))?);
            }
            Group::from_permutation_gens(size, &gens, order_cap)
        }
        "table" => {
            if size == 0 {
                return Err(parse_err(hline, "table size must be positive"));
            }
            if size > order_cap {
                return Err(Error::OrderCapExceeded { order: size, cap: order_cap });
            }
            let mut rows = Vec::with_capacity(size);
            for (n, l) in lines {
                let row = l
                    .split_whitespace()
                    .map(|w| w.parse::<usize>().map_err(|_| parse_err(n, format!("bad index `{w}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != size {
                    return Err(parse_err(n, format!("expected {size} entries, found {}", row.len())));
                }
                if let Some(bad) = row.iter().find(|&&x| x >= size) {
                    return Err(parse_err(n, format!("entry {bad} out of range for order {size}")));
                }
                if rows.len() == size {
                    return Err(parse_err(n, format!("more than {size} rows")));
                }
                rows.push(row);
            }
            if rows.len() != size {
                return Err(parse_err(hline, format!("expected {size} rows, found {}", rows.len())));
            }
            Ok(Group::from_cayley_table(&rows)?.with_order_cap(order_cap))
        }
        other => Err(parse_err(hline, format!("unknown header `{other}`"))),
    }
}

pub fn read_group_file(path: &Path, order_cap: usize) -> Result<Group> {
    let text = std::fs::read_to_string(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(parse_group(&text, order_cap)?.with_label(name))
}

/// The table format, readable by [`parse_group`].
pub fn dump_table(g: &Group) -> String {
    let mut out = format!("# {}\ntable {}\n", g.label(), g.order());
    for row in g.table_rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
