//! Plain-text design files.
//!
//! ```text
//! # comment
//! design v=13 k=3 b=26
//! cyclic base=1,3,9;2,5,6
//! 1,3,9
//! ...
//! class 0: 0,4,8
//! ```
//!
//! The `cyclic` line lists the full-orbit base blocks separated by `;` and
//! ends with `short` when the regular short orbit is present. With `b=0` the
//! blocks are generated from the `cyclic` line. `class` lines hold 0-based
//! block indices.

use std::fmt::Write as _;

use super::{
    expand_cdf_to_design, verify_bibd, Block, CyclicStructure, Design, DesignError, DifferenceFamily, FamilyKind,
    Resolution,
};

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Skip the pair-coverage check.
    pub trusted: bool,
}

fn perr(line: usize, message: impl Into<String>) -> DesignError {
    DesignError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_list(s: &str, line: usize) -> Result<Vec<usize>, DesignError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| perr(line, format!("bad integer {x:?}")))
        })
        .collect()
}

fn parse_header(s: &str, line: usize) -> Result<(usize, usize, usize), DesignError> {
    let (mut v, mut k, mut b) = (None, None, None);
    for field in s.split_whitespace().skip(1) {
        let (key, val) = field
            .split_once('=')
            .ok_or_else(|| perr(line, format!("expected key=value, got {field:?}")))?;
        let val: usize = val.parse().map_err(|_| perr(line, format!("bad value for {key}")))?;
        match key {
            "v" => v = Some(val),
            "k" => k = Some(val),
            "b" => b = Some(val),
            _ => return Err(perr(line, format!("unknown header key {key:?}"))),
        }
    }
    match (v, k, b) {
        (Some(v), Some(k), Some(b)) => Ok((v, k, b)),
        _ => Err(perr(line, "header needs v, k and b")),
    }
}

/// Parses a design file.
pub fn parse_design(text: &str, opts: LoadOptions) -> Result<Design, DesignError> {
    let mut header = None;
    let mut cyclic: Option<CyclicStructure> = None;
    let mut lists = Vec::new();
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("design") {
            if header.is_some() {
                return Err(perr(lineno, "duplicate header"));
            }
            header = Some(parse_header(line, lineno)?);
            continue;
        }
        let Some((v, k, _)) = header else {
            return Err(perr(lineno, "missing `design` header"));
        };
        if let Some(rest) = line.strip_prefix("cyclic") {
            let mut short = false;
            let mut base = Vec::new();
            for tok in rest.split_whitespace() {
                if tok == "short" {
                    short = true;
                } else if let Some(list) = tok.strip_prefix("base=") {
                    for part in list.split(';').filter(|p| !p.is_empty()) {
                        let pts = parse_list(part, lineno)?;
                        if pts.len() != k {
                            return Err(perr(lineno, format!("base block {part} does not have {k} points")));
                        }
                        base.push(Block::new(pts, v).map_err(|e| perr(lineno, e.to_string()))?);
                    }
                } else {
                    return Err(perr(lineno, format!("unexpected token {tok:?}")));
                }
            }
            cyclic = Some(CyclicStructure {
                base_blocks: base,
                short_orbit: short,
            });
        } else if let Some(rest) = line.strip_prefix("class") {
            let (idx, members) = rest
                .split_once(':')
                .ok_or_else(|| perr(lineno, "expected `class i: ...`"))?;
            let idx: usize = idx.trim().parse().map_err(|_| perr(lineno, "bad class index"))?;
            let members = if members.trim().is_empty() {
                Vec::new()
            } else {
                parse_list(members, lineno)?
            };
            classes.push((idx, members));
        } else {
            let pts = parse_list(line, lineno)?;
            if pts.len() != k {
                return Err(perr(lineno, format!("block has {} points, expected {k}", pts.len())));
            }
            lists.push((lineno, pts));
        }
    }

    let (v, k, b) = header.ok_or_else(|| perr(0, "missing `design` header"))?;
    let mut design = if b == 0 && lists.is_empty() {
        let cyc = cyclic.clone().ok_or_else(|| perr(0, "b=0 needs a `cyclic` line"))?;
        let f = DifferenceFamily::new(v, k, cyc.base_blocks, FamilyKind::Cdf, cyc.short_orbit);
        expand_cdf_to_design(&f)?
    } else {
        if lists.len() != b {
            return Err(perr(
                0,
                format!("header declares b={b} but {} blocks follow", lists.len()),
            ));
        }
        let blocks = lists
            .into_iter()
            .map(|(ln, pts)| Block::new(pts, v).map_err(|e| perr(ln, e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let d = Design::new(v, k, blocks)?;
        match cyclic {
            Some(c) => d.with_cyclic(c),
            None => d,
        }
    };

    if !classes.is_empty() {
        classes.sort_by_key(|(i, _)| *i);
        if classes.iter().enumerate().any(|(pos, (i, _))| pos != *i) {
            return Err(perr(0, "class indices must be 0, 1, 2, ..."));
        }
        let res = Resolution::new(classes.into_iter().map(|(_, c)| c).collect());
        design = design.with_resolution(res)?;
    }

    if !opts.trusted {
        let report = verify_bibd(&design);
        if !report.ok {
            let detail = match report.first_bad_pair {
                Some((x, y, c)) => format!("pair {{{x},{y}}} lies in {c} blocks"),
                None => "replication numbers disagree".into(),
            };
            return Err(DesignError::InvalidFamily(format!("not a BIBD(v,k,1): {detail}")));
        }
    }
    Ok(design)
}

/// Serializes a design; the output parses back to an equal design.
pub fn write_design(d: &Design) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "design v={} k={} b={}", d.v(), d.k(), d.b());
    if let Some(c) = d.cyclic() {
        let base: Vec<String> = c.base_blocks.iter().map(|b| b.to_string()).collect();
        let _ = write!(out, "cyclic base={}", base.join(";"));
        if c.short_orbit {
            out.push_str(" short");
        }
        out.push('\n');
    }
    for b in d.blocks() {
        let _ = writeln!(out, "{b}");
    }
    if let Some(res) = d.resolution() {
        for (i, class) in res.classes().iter().enumerate() {
            let members: Vec<String> = class.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "class {i}: {}", members.join(","));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::netto_cdf;
    use crate::designs::verify::fixtures::{ag23, fano};

    #[test]
    fn round_trip() {
        for d in [fano(), ag23(), expand_cdf_to_design(&netto_cdf(13).unwrap()).unwrap()] {
            let text = write_design(&d);
            let back = parse_design(&text, LoadOptions::default()).unwrap();
            assert_eq!(back, d);
            assert_eq!(write_design(&back), text);
        }
    }

    #[test]
    fn expand_on_load() {
        let text = "# CDF(15,3,1)\ndesign v=15 k=3 b=0\ncyclic base=0,1,4;0,2,8 short\n";
        let d = parse_design(text, LoadOptions::default()).unwrap();
        assert_eq!(d.b(), 35);
        assert!(d.cyclic().unwrap().short_orbit);
    }

    #[test]
    fn coverage_checked_unless_trusted() {
        let text = "design v=7 k=3 b=2\n0,1,3\n1,2,4\n";
        assert!(matches!(
            parse_design(text, LoadOptions::default()),
            Err(DesignError::InvalidFamily(_))
        ));
        assert_eq!(parse_design(text, LoadOptions { trusted: true }).unwrap().b(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "design v=7 k=3 b=1\n0,1,x\n";
        assert!(matches!(
            parse_design(bad, LoadOptions::default()),
            Err(DesignError::Parse { line: 2, .. })
        ));
        let short = "design v=7 k=3 b=1\n0,1\n";
        assert!(matches!(
            parse_design(short, LoadOptions::default()),
            Err(DesignError::Parse { line: 2, .. })
        ));
        let range = "design v=7 k=3 b=1\n0,1,9\n";
        assert!(matches!(
            parse_design(range, LoadOptions::default()),
            Err(DesignError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_design("0,1,2\n", LoadOptions::default()),
            Err(DesignError::Parse { line: 1, .. })
        ));
        let count = "design v=7 k=3 b=2\n0,1,3\n";
        assert!(matches!(
            parse_design(count, LoadOptions { trusted: true }),
            Err(DesignError::Parse { .. })
        ));
    }
}
