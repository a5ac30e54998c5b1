//! The LQT text format for multiplication tables.
//!
//! Comment lines start with `#`. The first non-comment line holds the order
//! `n`; the next `n` non-comment lines hold `n` whitespace-separated entries
//! each (row `a` lists the images of `L_a`). Entries are 0-based; the
//! `rig-matrix` import variant reads the same layout with 1-based entries.

use crate::algebra::{AlgebraError, LeftQuasigroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Lqt,
    /// 1-based entries, as exported from quandle library matrices.
    RigMatrix,
}

#[derive(Debug, thiserror::Error)]
pub enum LqtError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub fn parse(text: &str, format: TableFormat) -> Result<LeftQuasigroup, LqtError> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut order: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        match order {
            None => {
                let n: usize = content.parse().map_err(|_| LqtError::Parse {
                    line,
                    msg: format!("expected the order, found {content:?}"),
                })?;
                if n == 0 {
                    return Err(LqtError::Parse {
                        line,
                        msg: "order must be positive".into(),
                    });
                }
                order = Some(n);
            }
            Some(n) => {
                if rows.len() == n {
                    return Err(LqtError::Parse {
                        line,
                        msg: "trailing data after table".into(),
                    });
                }
                let mut row = Vec::with_capacity(n);
                for tok in content.split_whitespace() {
                    let v: usize = tok.parse().map_err(|_| LqtError::Parse {
                        line,
                        msg: format!("bad entry {tok:?}"),
                    })?;
                    let v = match format {
                        TableFormat::Lqt => v,
                        TableFormat::RigMatrix => v.checked_sub(1).ok_or(LqtError::Parse {
                            line,
                            msg: "rig-matrix entries are 1-based".into(),
                        })?,
                    };
                    row.push(v);
                }
                if row.len() != n {
                    return Err(LqtError::Parse {
                        line,
                        msg: format!("expected {n} entries, found {}", row.len()),
                    });
                }
                rows.push(row);
            }
        }
    }
    let n = order.ok_or(LqtError::Parse {
        line: 0,
        msg: "empty input".into(),
    })?;
    if rows.len() != n {
        return Err(LqtError::Parse {
            line: 0,
            msg: format!("expected {n} rows, found {}", rows.len()),
        });
    }
    Ok(LeftQuasigroup::from_table(&rows)?)
}

pub fn emit(q: &LeftQuasigroup) -> String {
    let mut out = String::new();
    if let Some(name) = q.name() {
        out.push_str(&format!("# {name}\n"));
    }
    out.push_str(&format!("{}\n", q.order()));
    for a in q.elements() {
        let row: Vec<String> = q.row(a).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
