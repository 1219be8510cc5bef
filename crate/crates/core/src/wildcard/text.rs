//! Row text rendering and the RowSet JSON format.

use serde::{Deserialize, Serialize};

use super::row::{Cell, Group, GroupKind, Row};
use super::{RowSet, WildcardError};

/// One row as space-separated symbols: `0`, `1`, `2` (free), `a<k>`/`b<k>`
/// for the k-th implication group, `d<k>`, `e<k>`, `g<k>`, `l<k>` for the
/// other kinds, followed by `| pending: …` or `| final`.
pub fn format_row(row: &Row) -> String {
    let mut numbers = Vec::with_capacity(row.groups().len());
    let mut next = std::collections::HashMap::<GroupKind, usize>::new();
    for g in row.groups() {
        let k = next.entry(g.kind()).or_insert(0);
        *k += 1;
        numbers.push(*k);
    }
    let symbols: Vec<String> = row
        .cells()
        .iter()
        .enumerate()
        .map(|(p, c)| match c {
            Cell::Zero => "0".to_string(),
            Cell::One => "1".to_string(),
            Cell::Free => "2".to_string(),
            Cell::Group(g) => {
                let g = *g as usize;
                let k = numbers[g];
                match &row.groups()[g] {
                    Group::Imp { a, .. } if a.contains(&p) => format!("a{k}"),
                    Group::Imp { .. } => format!("b{k}"),
                    Group::D(_) => format!("d{k}"),
                    Group::Eps(_) => format!("e{k}"),
                    Group::G(_) => format!("g{k}"),
                    Group::Ell(_) => format!("l{k}"),
                }
            }
        })
        .collect();
    let tag = if row.pending.is_empty() {
        "final".to_string()
    } else {
        let ids: Vec<String> = row.pending.iter().map(|i| i.to_string()).collect();
        format!("pending: {}", ids.join(" "))
    };
    format!("{} | {}", symbols.join(" "), tag)
}

pub fn format_rowset(rs: &RowSet) -> String {
    let mut s = String::new();
    for (i, r) in rs.rows.iter().enumerate() {
        s.push_str(&format!("r{}: {}  (count {})\n", i + 1, format_row(r), r.count()));
    }
    s
}

#[derive(Serialize, Deserialize)]
struct RowSetJson {
    width: usize,
    rows: Vec<RowJson>,
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    cells: Vec<CellJson>,
    groups: Vec<GroupJson>,
    #[serde(default)]
    pending: Vec<usize>,
    #[serde(default, skip_deserializing)]
    count: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CellJson {
    Symbol(u8),
    Group { group: usize },
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    id: usize,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    members: Option<Vec<usize>>,
}

pub fn rowset_to_json(rs: &RowSet) -> serde_json::Value {
    let rows = rs
        .rows
        .iter()
        .map(|r| RowJson {
            cells: r
                .cells()
                .iter()
                .map(|c| match c {
                    Cell::Zero => CellJson::Symbol(0),
                    Cell::One => CellJson::Symbol(1),
                    Cell::Free => CellJson::Symbol(2),
                    Cell::Group(g) => CellJson::Group { group: *g as usize },
                })
                .collect(),
            groups: r
                .groups()
                .iter()
                .enumerate()
                .map(|(id, g)| {
                    let kind = g.kind().as_str().to_string();
                    match g {
                        Group::Imp { a, b } => GroupJson {
                            id,
                            kind,
                            a: Some(a.clone()),
                            b: Some(b.clone()),
                            members: None,
                        },
                        other => GroupJson {
                            id,
                            kind,
                            a: None,
                            b: None,
                            members: Some(other.members()),
                        },
                    }
                })
                .collect(),
            pending: r.pending.clone(),
            count: r.count().to_string(),
        })
        .collect();
    serde_json::to_value(RowSetJson {
        width: rs.width,
        rows,
    })
    .expect("plain data serializes")
}

fn invalid(msg: impl Into<String>) -> WildcardError {
    WildcardError::InvalidRow(msg.into())
}

fn group_from_json(g: GroupJson) -> Result<Group, WildcardError> {
    let members = || {
        g.members
            .clone()
            .ok_or_else(|| invalid(format!("group {} needs \"members\"", g.id)))
    };
    Ok(match g.kind.as_str() {
        "imp" => Group::Imp {
            a: g.a.clone().ok_or_else(|| invalid(format!("group {} needs \"a\"", g.id)))?,
            b: g.b.clone().ok_or_else(|| invalid(format!("group {} needs \"b\"", g.id)))?,
        },
        "d" => Group::D(members()?),
        "eps" => Group::Eps(members()?),
        "g" => Group::G(members()?),
        "ell" => Group::Ell(members()?),
        other => return Err(invalid(format!("unknown group kind {other:?}"))),
    })
}

pub fn rowset_from_json(value: &serde_json::Value) -> Result<RowSet, WildcardError> {
    let parsed: RowSetJson =
        serde_json::from_value(value.clone()).map_err(|e| invalid(e.to_string()))?;
    let mut rows = Vec::with_capacity(parsed.rows.len());
    for (ri, rj) in parsed.rows.into_iter().enumerate() {
        let mut groups: Vec<GroupJson> = rj.groups;
        groups.sort_by_key(|g| g.id);
        if groups.iter().enumerate().any(|(i, g)| g.id != i) {
            return Err(invalid(format!("row {ri}: group ids must be 0..k")));
        }
        let base = rj
            .cells
            .iter()
            .map(|c| match c {
                CellJson::Symbol(0) => Ok(Cell::Zero),
                CellJson::Symbol(1) => Ok(Cell::One),
                CellJson::Symbol(2) | CellJson::Group { .. } => Ok(Cell::Free),
                CellJson::Symbol(s) => Err(invalid(format!("row {ri}: unknown cell {s}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let groups = groups
            .into_iter()
            .map(group_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let row = Row::new(base, groups)?.with_pending(rj.pending);
        for (p, c) in rj.cells.iter().enumerate() {
            if let CellJson::Group { group } = c {
                if row.group_of(p) != Some(*group) {
                    return Err(invalid(format!(
                        "row {ri}: cell {p} names group {group} but is not its member"
                    )));
                }
            }
        }
        if let Some(p) = (0..row.width())
            .find(|&p| row.group_of(p).is_some() && !matches!(rj.cells[p], CellJson::Group { .. }))
        {
            return Err(invalid(format!("row {ri}: cell {p} is a group member")));
        }
        rows.push(row);
    }
    RowSet::new(parsed.width, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::wildcard::enumerate;

    #[test]
    fn json_round_trip() {
        let rs = enumerate(&fixtures::fig81_poset(), &fixtures::fig81_lines()).unwrap();
        let back = rowset_from_json(&rowset_to_json(&rs)).unwrap();
        assert_eq!(back, rs);
    }

    #[test]
    fn text_symbols() {
        let r = Row::new(
            vec![Cell::Free, Cell::One, Cell::Free, Cell::Zero],
            vec![Group::Imp {
                a: vec![2],
                b: vec![0],
            }],
        )
        .unwrap();
        assert_eq!(format_row(&r), "b1 1 a1 0 | final");
    }
}
