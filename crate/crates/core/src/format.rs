//! The frame file format.
//!
//! ```text
//! # Z6 and Z9 glued along Z3
//! group 0 cyclic 6
//! group 1 cyclic 9
//! block 0 1
//! iso 0 1
//! H 0 3
//! K 0 3 6
//! map 0:0 1:1 2:2
//! end
//! ```
//!
//! `group <id> table <n>` is followed by `n` rows of `n` element indices.
//! `map` pairs one representative of each `H`-coset with any element of its
//! image `K`-coset. Everything after `#` on a line is a comment; comment lines
//! before the first directive are kept as the frame's header.

use std::fmt::{self, Write as _};

use crate::frame::{Frame, IsoRecord};
use crate::group::{make_cyclic, validate_table_relabeled, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

struct GroupDecl {
    id: String,
    group: FiniteGroup,
    /// original element index -> normalized index
    relabel: Vec<usize>,
}

struct IsoDecl {
    line: usize,
    x: usize,
    y: usize,
    h: Option<(usize, Vec<usize>)>,
    k: Option<(usize, Vec<usize>)>,
    map: Option<(usize, Vec<(usize, usize)>)>,
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, ParseError> {
    tok.parse().or_else(|_| {
        err(
            line,
            format!("expected a non-negative integer, found `{tok}`"),
        )
    })
}

fn find_group(groups: &[GroupDecl], line: usize, id: &str) -> Result<usize, ParseError> {
    match groups.iter().position(|g| g.id == id) {
        Some(x) => Ok(x),
        None => err(line, format!("unknown group id `{id}`")),
    }
}

/// Parses a frame file and validates everything except the frame conditions.
pub fn parse_frame(text: &str) -> Result<Frame, ParseError> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    let mut comments = Vec::new();
    let mut groups: Vec<GroupDecl> = Vec::new();
    let mut blocks: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut isos: Vec<IsoDecl> = Vec::new();
    let mut open: Option<IsoDecl> = None;
    let mut in_header = true;

    let mut i = 0;
    while i < lines.len() {
        let (ln, raw) = lines[i];
        i += 1;
        let (content, comment) = match raw.split_once('#') {
            Some((c, rest)) => (c, Some(rest)),
            None => (raw, None),
        };
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some(&head) = toks.first() else {
            if let (true, Some(c)) = (in_header, comment) {
                comments.push(c.strip_prefix(' ').unwrap_or(c).trim_end().to_string());
            }
            continue;
        };
        in_header = false;

        if let Some(d) = open.as_mut() {
            match head {
                "H" | "K" => {
                    let elems = toks[1..]
                        .iter()
                        .map(|t| parse_usize(ln, t))
                        .collect::<Result<Vec<_>, _>>()?;
                    let slot = if head == "H" { &mut d.h } else { &mut d.k };
                    if slot.is_some() {
                        return err(ln, format!("duplicate `{head}` line"));
                    }
                    *slot = Some((ln, elems));
                }
                "map" => {
                    if d.map.is_some() {
                        return err(ln, "duplicate `map` line");
                    }
                    let mut pairs = Vec::new();
                    for t in &toks[1..] {
                        let Some((a, b)) = t.split_once(':') else {
                            return err(ln, format!("expected h:k, found `{t}`"));
                        };
                        pairs.push((parse_usize(ln, a)?, parse_usize(ln, b)?));
                    }
                    d.map = Some((ln, pairs));
                }
                "end" => {
                    if d.h.is_none() || d.k.is_none() || d.map.is_none() {
                        return err(ln, "iso needs `H`, `K` and `map` lines before `end`");
                    }
                    isos.push(open.take().unwrap());
                }
                _ => return err(d.line, "iso without `end`"),
            }
            continue;
        }

        match head {
            "group" => {
                if toks.len() != 4 {
                    return err(
                        ln,
                        "expected `group <id> cyclic <n>` or `group <id> table <n>`",
                    );
                }
                let id = toks[1].to_string();
                if groups.iter().any(|g| g.id == id) {
                    return err(ln, format!("duplicate group id `{id}`"));
                }
                let n = parse_usize(ln, toks[3])?;
                let (group, relabel) = match toks[2] {
                    "cyclic" => {
                        let g = make_cyclic(n).map_err(|e| ParseError {
                            line: ln,
                            message: e.to_string(),
                        })?;
                        (g, (0..n).collect())
                    }
                    "table" => {
                        let mut rows = Vec::with_capacity(n);
                        while rows.len() < n {
                            let Some(&(rl, r)) = lines.get(i) else {
                                return err(ln, format!("table needs {n} rows"));
                            };
                            i += 1;
                            let r = r.split('#').next().unwrap_or("");
                            if r.trim().is_empty() {
                                continue;
                            }
                            rows.push(
                                r.split_whitespace()
                                    .map(|t| parse_usize(rl, t))
                                    .collect::<Result<Vec<_>, _>>()?,
                            );
                        }
                        validate_table_relabeled(&rows).map_err(|e| ParseError {
                            line: ln,
                            message: format!("group `{id}`: {e}"),
                        })?
                    }
                    other => return err(ln, format!("unknown group kind `{other}`")),
                };
                groups.push(GroupDecl { id, group, relabel });
            }
            "block" => {
                let members = toks[1..]
                    .iter()
                    .map(|id| find_group(&groups, ln, id))
                    .collect::<Result<Vec<_>, _>>()?;
                if members.is_empty() {
                    return err(ln, "empty block");
                }
                blocks.push((ln, members));
            }
            "iso" => {
                if toks.len() != 3 {
                    return err(ln, "expected `iso <x> <y>`");
                }
                let x = find_group(&groups, ln, toks[1])?;
                let y = find_group(&groups, ln, toks[2])?;
                if y <= x {
                    return err(
                        ln,
                        format!("`{}` must be declared before `{}`", toks[2], toks[1]),
                    );
                }
                if isos.iter().any(|d| d.x == x && d.y == y) {
                    return err(ln, format!("duplicate iso {} {}", toks[1], toks[2]));
                }
                open = Some(IsoDecl {
                    line: ln,
                    x,
                    y,
                    h: None,
                    k: None,
                    map: None,
                });
            }
            "H" | "K" | "map" => return err(ln, format!("`{head}` outside an iso")),
            "end" => return err(ln, "`end` without `iso`"),
            other => return err(ln, format!("unknown directive `{other}`")),
        }
    }
    if let Some(d) = open {
        return err(d.line, "iso without `end`");
    }

    // Blocks partition the declared groups.
    let mut block_of = vec![usize::MAX; groups.len()];
    for (bi, (ln, b)) in blocks.iter().enumerate() {
        for &x in b {
            if block_of[x] != usize::MAX {
                return err(
                    *ln,
                    format!("group `{}` is already in a block", groups[x].id),
                );
            }
            block_of[x] = bi;
        }
    }
    if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
        return err(0, format!("group `{}` is in no block", groups[x].id));
    }

    let mut records = Vec::new();
    for d in &isos {
        let (gx, gy) = (&groups[d.x], &groups[d.y]);
        if block_of[d.x] != block_of[d.y] {
            return err(d.line, format!("iso {} {} crosses blocks", gx.id, gy.id));
        }
        let (hl, h) = d.h.as_ref().unwrap();
        let (kl, k) = d.k.as_ref().unwrap();
        let (ml, map) = d.map.as_ref().unwrap();
        let h = to_set(gx, *hl, h)?;
        let k = to_set(gy, *kl, k)?;
        let hs = gx.group.enumerate_cosets(&h).map_err(|e| ParseError {
            line: *hl,
            message: format!("H: {e}"),
        })?;
        let ks = gy.group.enumerate_cosets(&k).map_err(|e| ParseError {
            line: *kl,
            message: format!("K: {e}"),
        })?;
        let mut canonical = vec![usize::MAX; hs.count()];
        for &(a, b) in map {
            let (a, b) = (elem(gx, *ml, a)?, elem(gy, *ml, b)?);
            let (ha, kb) = (hs.index_of(a), ks.index_of(b));
            if canonical[ha] != usize::MAX {
                return err(*ml, format!("H-coset {} mapped twice", hs.coset(ha)));
            }
            canonical[ha] = kb;
        }
        if let Some(miss) = canonical.iter().position(|&c| c == usize::MAX) {
            return err(*ml, format!("H-coset {} is not mapped", hs.coset(miss)));
        }
        let rec = IsoRecord::new((d.x, &gx.group, &h), (d.y, &gy.group, &k), &canonical).map_err(
            |e| ParseError {
                line: *ml,
                message: e.to_string(),
            },
        )?;
        records.push(rec);
    }
    for (ln, b) in &blocks {
        let mut b = b.clone();
        b.sort_unstable();
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                if !isos.iter().any(|d| d.x == x && d.y == y) {
                    return err(
                        *ln,
                        format!("missing iso {} {}", groups[x].id, groups[y].id),
                    );
                }
            }
        }
    }

    let groups_out: Vec<(String, FiniteGroup)> =
        groups.into_iter().map(|g| (g.id, g.group)).collect();
    let block_ids: Vec<Vec<usize>> = blocks.into_iter().map(|(_, b)| b).collect();
    Frame::new(groups_out, block_ids, records)
        .map(|f| f.with_comments(comments))
        .map_err(|e| ParseError {
            line: 0,
            message: e.to_string(),
        })
}

fn elem(g: &GroupDecl, line: usize, e: usize) -> Result<usize, ParseError> {
    g.relabel.get(e).copied().ok_or_else(|| ParseError {
        line,
        message: format!(
            "element {e} outside group `{}` of order {}",
            g.id,
            g.group.order()
        ),
    })
}

fn to_set(g: &GroupDecl, line: usize, elems: &[usize]) -> Result<crate::ElementSet, ParseError> {
    let mapped = elems
        .iter()
        .map(|&e| elem(g, line, e))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(crate::ElementSet::from_elements(g.group.order(), mapped))
}

/// Writes a frame in normalized form: header comments, groups, blocks, then
/// stored isomorphisms with least-element coset representatives.
pub fn emit_frame(frame: &Frame) -> String {
    let mut s = String::new();
    for c in frame.comments() {
        if c.is_empty() {
            s.push_str("#\n");
        } else {
            let _ = writeln!(s, "# {c}");
        }
    }
    for (x, g) in frame.groups().iter().enumerate() {
        let id = frame.id(x);
        if g.is_standard_cyclic() {
            let _ = writeln!(s, "group {id} cyclic {}", g.order());
        } else {
            let _ = writeln!(s, "group {id} table {}", g.order());
            for a in 0..g.order() {
                let row: Vec<String> = g.row(a).iter().map(|v| v.to_string()).collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        }
    }
    for b in frame.blocks() {
        let ids: Vec<&str> = b.iter().map(|&x| frame.id(x)).collect();
        let _ = writeln!(s, "block {}", ids.join(" "));
    }
    for r in frame.stored_isos() {
        let _ = writeln!(s, "iso {} {}", frame.id(r.x()), frame.id(r.y()));
        let list = |set: &crate::ElementSet| {
            set.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(s, "H {}", list(r.h().subgroup()));
        let _ = writeln!(s, "K {}", list(r.k().subgroup()));
        let pairs: Vec<String> = (0..r.kappa())
            .map(|g| {
                format!(
                    "{}:{}",
                    r.h().coset(g).least().unwrap(),
                    r.k().coset(g).least().unwrap()
                )
            })
            .collect();
        let _ = writeln!(s, "map {}", pairs.join(" "));
        s.push_str("end\n");
    }
    s
}
