//! Line-oriented text format for diagrams.
//!
//! ```text
//! rank 3
//! edge 1 2 4>     # arrow points toward the shorter root: a12 = -1, a21 = -2
//! edge 2 3 inf
//! ```
//!
//! Node indices are 1-based. Labels are `3`, `4`, `6` and `inf`; an arrow
//! `>` or `<` may follow the label. Text without arrows is a Coxeter
//! diagram; one arrow anywhere makes it a Dynkin diagram, and then every
//! edge with label 4 or 6 needs one. Blank lines and `#` comments are
//! ignored.

use std::fmt::Write as _;

use crate::diagram::{CoxeterDiagram, GeneralizedCartanMatrix, Label};
use crate::dynkin::{orientation, Orientation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagram {
    Coxeter(CoxeterDiagram),
    Cartan(GeneralizedCartanMatrix),
}

impl Diagram {
    pub fn coxeter(&self) -> Result<CoxeterDiagram> {
        match self {
            Diagram::Coxeter(d) => Ok(d.clone()),
            Diagram::Cartan(a) => a.coxeter_diagram(),
        }
    }

    /// The Cartan matrix; a Coxeter diagram qualifies only when its labels
    /// fix the root lengths (3 and `inf`, the latter as `(-2, -2)`).
    pub fn cartan(&self) -> Result<GeneralizedCartanMatrix> {
        match self {
            Diagram::Cartan(a) => Ok(a.clone()),
            Diagram::Coxeter(d) => {
                let n = d.nodes();
                let mut rows = vec![vec![0i64; n]; n];
                for (i, row) in rows.iter_mut().enumerate() {
                    row[i] = 2;
                }
                for (i, j, l) in d.edges() {
                    let x = match l {
                        Label::Three => -1,
                        Label::Infinite => -2,
                        Label::Two => 0,
                        Label::Four | Label::Six => {
                            return Err(Error::InvalidMatrix(format!(
                                "edge {} {} with label {l} needs an arrow",
                                i + 1,
                                j + 1
                            )))
                        }
                    };
                    rows[i][j] = x;
                    rows[j][i] = x;
                }
                GeneralizedCartanMatrix::new(rows)
            }
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Diagram::Coxeter(d) => serialize_coxeter(d),
            Diagram::Cartan(a) => serialize_cartan(a),
        }
    }
}

struct EdgeLine {
    line: usize,
    i: usize,
    j: usize,
    label: Label,
    label_text: String,
    arrow: Option<char>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = vec![];
    let mut start = None;
    for (pos, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((b + 1, &s[b..pos]));
            }
        } else if start.is_none() {
            start = Some(pos);
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out
}

pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let mut rank: Option<usize> = None;
    let mut edges: Vec<EdgeLine> = vec![];
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        match head {
            "rank" => {
                if rank.is_some() {
                    return Err(syntax(line, col, "rank given twice"));
                }
                if toks.len() != 2 {
                    return Err(syntax(line, col, "expected `rank <k>`"));
                }
                let (c, v) = toks[1];
                let k: usize = v
                    .parse()
                    .map_err(|_| syntax(line, c, format!("invalid rank `{v}`")))?;
                if k == 0 {
                    return Err(syntax(line, c, "rank must be positive"));
                }
                rank = Some(k);
            }
            "edge" => {
                let Some(n) = rank else {
                    return Err(syntax(line, col, "edge before rank"));
                };
                if toks.len() != 4 {
                    return Err(syntax(line, col, "expected `edge <i> <j> <label>`"));
                }
                let mut ends = [0usize; 2];
                for (slot, &(c, v)) in ends.iter_mut().zip(&toks[1..3]) {
                    let x: usize = v
                        .parse()
                        .map_err(|_| syntax(line, c, format!("invalid node index `{v}`")))?;
                    if x == 0 || x > n {
                        return Err(Error::IndexOutOfRange { line, index: x });
                    }
                    *slot = x - 1;
                }
                let (i, j) = (ends[0], ends[1]);
                if i == j {
                    return Err(Error::SelfLoop { line });
                }
                let (_, lt) = toks[3];
                let (body, arrow) = match lt.chars().last() {
                    Some(a @ ('>' | '<')) => (&lt[..lt.len() - 1], Some(a)),
                    _ => (lt, None),
                };
                let label = match body {
                    "3" => Label::Three,
                    "4" => Label::Four,
                    "6" => Label::Six,
                    "inf" => Label::Infinite,
                    _ => {
                        return Err(Error::BadLabel {
                            line,
                            label: lt.to_string(),
                        })
                    }
                };
                if arrow.is_some() && label == Label::Three {
                    return Err(Error::BadLabel {
                        line,
                        label: lt.to_string(),
                    });
                }
                if edges
                    .iter()
                    .any(|e| (e.i, e.j) == (i, j) || (e.i, e.j) == (j, i))
                {
                    return Err(Error::DuplicateEdge { line });
                }
                edges.push(EdgeLine {
                    line,
                    i,
                    j,
                    label,
                    label_text: lt.to_string(),
                    arrow,
                });
            }
            other => return Err(syntax(line, col, format!("unknown keyword `{other}`"))),
        }
    }
    let Some(n) = rank else {
        return Err(syntax(last_line.max(1), 1, "missing `rank` line"));
    };
    if edges.iter().all(|e| e.arrow.is_none()) {
        let list: Vec<(usize, usize, Label)> = edges.iter().map(|e| (e.i, e.j, e.label)).collect();
        return Ok(Diagram::Coxeter(CoxeterDiagram::from_edges(n, &list)?));
    }
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 2;
    }
    for e in &edges {
        let (short, long) = match e.label {
            Label::Three => (-1, -1),
            Label::Four => (-1, -2),
            Label::Six => (-1, -3),
            Label::Infinite if e.arrow.is_none() => (-2, -2),
            Label::Infinite => (-1, -4),
            Label::Two => unreachable!("label 2 is not accepted"),
        };
        let (aij, aji) = match e.arrow {
            Some('>') => (short, long),
            Some(_) => (long, short),
            None if short == long => (short, long),
            None => {
                return Err(Error::BadLabel {
                    line: e.line,
                    label: format!("{} (arrow required in a Dynkin diagram)", e.label_text),
                })
            }
        };
        rows[e.i][e.j] = aij;
        rows[e.j][e.i] = aji;
    }
    Ok(Diagram::Cartan(GeneralizedCartanMatrix::new(rows)?))
}

pub fn serialize_coxeter(d: &CoxeterDiagram) -> String {
    let mut s = format!("rank {}\n", d.nodes());
    for (i, j, l) in d.edges() {
        let _ = writeln!(s, "edge {} {} {}", i + 1, j + 1, l);
    }
    s
}

pub fn serialize_cartan(a: &GeneralizedCartanMatrix) -> String {
    let n = a.rank();
    let mut s = format!("rank {n}\n");
    for i in 0..n {
        for j in i + 1..n {
            let Some(o) = orientation(a, i, j) else {
                continue;
            };
            let p = a.get(i, j) * a.get(j, i);
            let label = Label::from_cartan_product(p).map_or(format!("?{p}"), |l| l.to_string());
            let arrow = match o {
                Orientation::Undirected => "",
                Orientation::TowardJ => ">",
                Orientation::TowardI => "<",
            };
            let _ = writeln!(s, "edge {} {} {label}{arrow}", i + 1, j + 1);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let d = parse_diagram("rank 2\nedge 1 2 3").unwrap();
        assert!(matches!(d, Diagram::Coxeter(_)));
        assert_eq!(d.cartan().unwrap().rows(), vec![vec![2, -1], vec![-1, 2]]);
        let d = parse_diagram("rank 2\nedge 1 2 4>").unwrap();
        assert_eq!(d.cartan().unwrap().rows(), vec![vec![2, -1], vec![-2, 2]]);
        let d = parse_diagram("rank 2\nedge 1 2 inf").unwrap();
        assert_eq!(d.cartan().unwrap().rows(), vec![vec![2, -2], vec![-2, 2]]);
        let d = parse_diagram("rank 2\nedge 1 2 inf<").unwrap();
        assert_eq!(d.cartan().unwrap().rows(), vec![vec![2, -4], vec![-1, 2]]);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_diagram("rank 2\nedge 1 2 3\nedge 2 1 3"),
            Err(Error::DuplicateEdge { line: 3 })
        );
        assert_eq!(
            parse_diagram("rank 2\nedge 1 1 3"),
            Err(Error::SelfLoop { line: 2 })
        );
        assert_eq!(
            parse_diagram("rank 2\nedge 1 3 3"),
            Err(Error::IndexOutOfRange { line: 2, index: 3 })
        );
        assert_eq!(
            parse_diagram("rank 2\nedge 1 2 5"),
            Err(Error::BadLabel {
                line: 2,
                label: "5".into()
            })
        );
        assert!(matches!(
            parse_diagram("rank 2\n  edgy 1 2 3"),
            Err(Error::Syntax {
                line: 2,
                column: 3,
                ..
            })
        ));
        assert!(parse_diagram("rank 3\nedge 1 2 4>\nedge 2 3 6").is_err());
        assert!(parse_diagram("rank 2\nedge 1 2 4")
            .unwrap()
            .cartan()
            .is_err());
    }

    #[test]
    fn round_trip() {
        let text = "rank 3\nedge 1 2 4>\nedge 2 3 inf\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.to_text(), text);
        let text = "rank 3\nedge 1 2 6\nedge 1 3 inf\n";
        assert_eq!(parse_diagram(text).unwrap().to_text(), text);
    }
}
