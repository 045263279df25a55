//! The `.sgap` text format, the relation literal syntax, and the built-in
//! example generators.
//!
//! Grammar (line-oriented, `#` starts a comment):
//!
//! ```text
//! name <string>          optional metadata
//! n <int>
//! table                  followed by n rows of n space-separated indices
//! eq <i> <j>             optional; symmetric-transitive closure applied
//! apt <i> <j>            optional; symmetrised
//! ```
//!
//! Omitted `eq` defaults to the identity, omitted `apt` to the complement
//! of the equality. Emission is canonical: pairs sorted, rows in index
//! order, LF line endings.

use crate::error::{Error, Result};
use crate::relations::{FiniteRelation, FiniteSetoid};
use crate::semigroup::SemigroupWithApartness;

/// A parsed `.sgap` document. Equality of documents is semantic: name,
/// carrier, table and the two resolved relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgapDocument {
    pub name: Option<String>,
    pub n: usize,
    pub table: Vec<u32>,
    pub eq: FiniteRelation,
    pub apt: FiniteRelation,
}

impl SgapDocument {
    /// Validates the document into a semigroup with apartness; errors carry
    /// the failing witness.
    pub fn to_semigroup(&self) -> Result<SemigroupWithApartness> {
        let setoid = FiniteSetoid::new(self.eq.clone(), self.apt.clone())?;
        SemigroupWithApartness::new(setoid, self.table.clone())
    }

    pub fn from_semigroup(name: Option<&str>, s: &SemigroupWithApartness) -> Self {
        SgapDocument {
            name: name.map(str::to_owned),
            n: s.carrier(),
            table: s.table().to_vec(),
            eq: s.setoid().eq().clone(),
            apt: s.setoid().apt().clone(),
        }
    }
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected an index, got `{token}`"),
    })
}

/// Parses the line-oriented `.sgap` grammar.
pub fn parse_sgap(text: &str) -> Result<SgapDocument> {
    let mut name = None;
    let mut n: Option<usize> = None;
    let mut table: Option<Vec<u32>> = None;
    let mut eq_pairs: Vec<(usize, usize)> = Vec::new();
    let mut apt_pairs: Vec<(usize, usize)> = Vec::new();
    let mut explicit_apt = false;
    let mut rows_wanted = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().expect("non-empty line");

        if rows_wanted > 0 {
            // Inside the table block every line is a row.
            let size = n.expect("n is set before table rows");
            let row: Vec<&str> = std::iter::once(head).chain(tokens).collect();
            if row.len() != size {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("table row has {} entries, expected {}", row.len(), size),
                });
            }
            let out = table.as_mut().expect("table started");
            for tok in row {
                let v = parse_index(tok, line_no)?;
                if v >= size {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("table entry {v} out of range for n={size}"),
                    });
                }
                out.push(v as u32);
            }
            rows_wanted -= 1;
            continue;
        }

        match head {
            "name" => {
                let rest = line["name".len()..].trim();
                if rest.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "empty name".into(),
                    });
                }
                name = Some(rest.to_owned());
            }
            "n" => {
                if n.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "duplicate `n` directive".into(),
                    });
                }
                let tok = tokens.next().ok_or(Error::Parse {
                    line: line_no,
                    msg: "missing carrier size".into(),
                })?;
                n = Some(parse_index(tok, line_no)?);
            }
            "table" => {
                if table.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: "duplicate `table` block".into(),
                    });
                }
                let size = n.ok_or(Error::Parse {
                    line: line_no,
                    msg: "`table` before `n`".into(),
                })?;
                table = Some(Vec::with_capacity(size * size));
                rows_wanted = size;
            }
            "eq" | "apt" => {
                let size = n.ok_or(Error::Parse {
                    line: line_no,
                    msg: format!("`{head}` before `n`"),
                })?;
                let i = parse_index(
                    tokens.next().ok_or(Error::Parse {
                        line: line_no,
                        msg: "missing first index".into(),
                    })?,
                    line_no,
                )?;
                let j = parse_index(
                    tokens.next().ok_or(Error::Parse {
                        line: line_no,
                        msg: "missing second index".into(),
                    })?,
                    line_no,
                )?;
                if i >= size || j >= size {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("pair ({i}, {j}) out of range for n={size}"),
                    });
                }
                if head == "eq" {
                    eq_pairs.push((i, j));
                } else {
                    explicit_apt = true;
                    apt_pairs.push((i, j));
                }
            }
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("unknown directive `{other}`"),
                });
            }
        }
    }

    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "missing `n` directive".into(),
    })?;
    let table = table.ok_or(Error::Parse {
        line: 0,
        msg: "missing `table` block".into(),
    })?;
    if rows_wanted > 0 {
        return Err(Error::Parse {
            line: 0,
            msg: format!("table block ended {rows_wanted} rows early"),
        });
    }

    let seed = FiniteRelation::from_pairs(n, &eq_pairs)?;
    let eq = crate::relations::equivalence_closure(&seed, &FiniteRelation::identity(n))?;
    let apt = if explicit_apt {
        let raw = FiniteRelation::from_pairs(n, &apt_pairs)?;
        raw.union(&raw.inverse())?
    } else {
        eq.complement()
    };
    Ok(SgapDocument {
        name,
        n,
        table,
        eq,
        apt,
    })
}

/// Canonical emission; `parse_sgap(emit_sgap(doc)) == doc` for every valid
/// document.
pub fn emit_sgap(doc: &SgapDocument) -> String {
    let mut out = String::new();
    if let Some(name) = &doc.name {
        out.push_str(&format!("name {name}\n"));
    }
    out.push_str(&format!("n {}\n", doc.n));
    out.push_str("table\n");
    for x in 0..doc.n {
        let row: Vec<String> = (0..doc.n)
            .map(|y| doc.table[x * doc.n + y].to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if doc.eq != FiniteRelation::identity(doc.n) {
        for (i, j) in doc.eq.pairs() {
            if i < j {
                out.push_str(&format!("eq {i} {j}\n"));
            }
        }
    }
    if doc.apt != doc.eq.complement() {
        for (i, j) in doc.apt.pairs() {
            if i <= j {
                out.push_str(&format!("apt {i} {j}\n"));
            }
        }
    }
    out
}

/// Parses a relation literal `n=3; pairs=(0,1)(1,2)` (whitespace
/// insensitive). The `n=` prefix may be omitted when a carrier size is
/// supplied by the context.
pub fn parse_relation_literal(text: &str, default_n: Option<usize>) -> Result<FiniteRelation> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    let mut n = default_n;
    if let Some(after) = rest.strip_prefix("n=") {
        let semi = after.find(';').ok_or(Error::Parse {
            line: 0,
            msg: "expected `;` after n=<int>".into(),
        })?;
        let val = after[..semi].parse().map_err(|_| Error::Parse {
            line: 0,
            msg: format!("bad carrier size `{}`", &after[..semi]),
        })?;
        n = Some(val);
        rest = &after[semi + 1..];
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        msg: "relation literal needs `n=<int>;` or a context carrier".into(),
    })?;
    let body = rest.strip_prefix("pairs=").ok_or(Error::Parse {
        line: 0,
        msg: "expected `pairs=`".into(),
    })?;
    let mut pairs = Vec::new();
    let mut cursor = body;
    while !cursor.is_empty() {
        if !cursor.starts_with('(') {
            return Err(Error::Parse {
                line: 0,
                msg: format!("expected `(` at `{cursor}`"),
            });
        }
        let close = cursor.find(')').ok_or(Error::Parse {
            line: 0,
            msg: "unclosed pair".into(),
        })?;
        let inner = &cursor[1..close];
        let (a, b) = inner.split_once(',').ok_or(Error::Parse {
            line: 0,
            msg: format!("expected `i,j` in `({inner})`"),
        })?;
        let x = parse_index(a, 0)?;
        let y = parse_index(b, 0)?;
        pairs.push((x, y));
        cursor = &cursor[close + 1..];
    }
    FiniteRelation::from_pairs(n, &pairs)
}

/// Canonical relation literal: pairs sorted lexicographically.
pub fn emit_relation_literal(rel: &FiniteRelation) -> String {
    let body: String = rel
        .pairs()
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect();
    format!("n={}; pairs={}", rel.carrier(), body)
}

fn table_from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u32> {
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            table.push(f(x, y) as u32);
        }
    }
    table
}

// Families build full semigroups, whose eager O(n^3) validation caps the
// sensible carrier well below the 4096-element relation limit.
const MAX_CARRIER: usize = 512;

/// Builds one of the named example families with denial apartness:
/// `cyclic:k`, `monogenic:m:r`, `leftzero:k`, `rightzero:k`, `null:k`,
/// `fulltransform:k` (k <= 4), `meet_chain:k`.
pub fn generate_family(spec: &str) -> Result<SgapDocument> {
    let parts: Vec<&str> = spec.split(':').collect();
    let unknown = || Error::UnknownFamily { spec: spec.into() };
    let too_big = || Error::FamilySizeBound { spec: spec.into() };
    let arg = |i: usize| -> Result<usize> {
        parts
            .get(i)
            .and_then(|t| t.parse().ok())
            .ok_or_else(unknown)
    };
    let (n, table) = match parts[0] {
        "cyclic" if parts.len() == 2 => {
            let k = arg(1)?;
            if k == 0 || k > MAX_CARRIER {
                return Err(too_big());
            }
            (k, table_from_fn(k, |x, y| (x + y) % k))
        }
        "monogenic" if parts.len() == 3 => {
            let m = arg(1)?;
            let r = arg(2)?;
            if m == 0 || r == 0 {
                return Err(unknown());
            }
            let k = m + r - 1;
            if k > MAX_CARRIER {
                return Err(too_big());
            }
            // Element i stands for a^(i+1); exponents above m + r - 1
            // reduce into the cycle tail.
            (
                k,
                table_from_fn(k, |x, y| {
                    let s = x + y + 2;
                    let e = if s <= k { s } else { (s - m) % r + m };
                    e - 1
                }),
            )
        }
        "leftzero" if parts.len() == 2 => {
            let k = arg(1)?;
            if k == 0 || k > MAX_CARRIER {
                return Err(too_big());
            }
            (k, table_from_fn(k, |x, _| x))
        }
        "rightzero" if parts.len() == 2 => {
            let k = arg(1)?;
            if k == 0 || k > MAX_CARRIER {
                return Err(too_big());
            }
            (k, table_from_fn(k, |_, y| y))
        }
        "null" if parts.len() == 2 => {
            let k = arg(1)?;
            if k == 0 || k > MAX_CARRIER {
                return Err(too_big());
            }
            (k, table_from_fn(k, |_, _| 0))
        }
        "meet_chain" if parts.len() == 2 => {
            let k = arg(1)?;
            if k == 0 || k > MAX_CARRIER {
                return Err(too_big());
            }
            (k, table_from_fn(k, |x, y| x.min(y)))
        }
        "fulltransform" if parts.len() == 2 => {
            let k = arg(1)?;
            if k == 0 || k > 4 {
                return Err(too_big());
            }
            let n = k.pow(k as u32);
            // Self-map index encoding: digit x in base k is the image of x.
            let image = |f: usize, x: usize| f / k.pow(x as u32) % k;
            let compose = |f: usize, g: usize| {
                (0..k)
                    .map(|x| image(f, image(g, x)) * k.pow(x as u32))
                    .sum::<usize>()
            };
            (n, table_from_fn(n, compose))
        }
        _ => return Err(unknown()),
    };
    let eq = FiniteRelation::identity(n);
    Ok(SgapDocument {
        name: Some(spec.to_owned()),
        n,
        table,
        apt: eq.complement(),
        eq,
    })
}
