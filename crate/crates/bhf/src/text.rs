//! Plain-text serialization for modules, structures, curves, and complexes.
//! ASCII, whitespace-separated, `#` starts a comment line. Output is
//! deterministic: identical inputs print byte-identical text.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::Basis;
use crate::az::{DdBimodule, DdTerm, DualGen};
use crate::curves::{Axis, Component, EdgePoint, Multicurve, SegKind};
use crate::pairing::ChainComplex;
use crate::structures::{Generator, Mark, TypeA, TypeD};

#[derive(Clone, Debug)]
pub struct ParseError {
    pub line: usize,
    pub what: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.what)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, what: impl Into<String>) -> ParseError {
    ParseError { line, what: what.into() }
}

fn gen_line(g: &Generator) -> String {
    match g.height {
        Some(h) => format!("gen {} {} height {h}", g.id, g.idem.token()),
        None => format!("gen {} {}", g.id, g.idem.token()),
    }
}

fn mark_lines(out: &mut String, marks: &[Mark], ids: &[String]) {
    for m in marks {
        let names: Vec<&str> = m.gens.iter().map(|g| ids[*g].as_str()).collect();
        out.push_str(&format!("mark {} {}\n", m.label, names.join(" ")));
    }
}

pub fn print_type_d(d: &TypeD) -> String {
    let mut out = format!("typeD {}\n", d.name);
    for g in &d.gens {
        out.push_str(&gen_line(g));
        out.push('\n');
    }
    let mut arrows = d.arrows.clone();
    arrows.sort_by_key(|a| (d.gens[a.src].id.clone(), d.gens[a.dst].id.clone(), a.coeff));
    for a in arrows {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            d.gens[a.src].id,
            d.gens[a.dst].id,
            a.coeff.token()
        ));
    }
    let ids: Vec<String> = d.gens.iter().map(|g| g.id.clone()).collect();
    mark_lines(&mut out, &d.marks, &ids);
    out
}

pub fn print_type_a(m: &TypeA) -> String {
    let mut out = format!("typeA {}\n", m.name);
    for g in &m.gens {
        out.push_str(&gen_line(g));
        out.push('\n');
    }
    let mut ops = m.ops.clone();
    ops.sort_by_key(|o| (m.gens[o.src].id.clone(), m.gens[o.dst].id.clone(), o.word.clone()));
    for o in ops {
        let word: Vec<&str> = o.word.iter().map(|b| b.token()).collect();
        out.push_str(&format!(
            "op {} {} {}\n",
            m.gens[o.src].id,
            m.gens[o.dst].id,
            word.join(" ")
        ));
    }
    let ids: Vec<String> = m.gens.iter().map(|g| g.id.clone()).collect();
    mark_lines(&mut out, &m.marks, &ids);
    out
}

pub fn print_dd(dd: &DdBimodule) -> String {
    let mut out = format!("dd {}\n", dd.name);
    for g in crate::az::DUAL_GENS {
        out.push_str(&format!(
            "gen {} {} {}\n",
            g.token(),
            g.left_idem().token(),
            g.right_idem().token()
        ));
    }
    for t in &dd.terms {
        out.push_str(&format!(
            "term {} {} {} {}\n",
            t.src.token(),
            t.dst.token(),
            t.a.token(),
            t.b.token()
        ));
    }
    out
}

pub fn print_curve(c: &Multicurve) -> String {
    let mut out = format!("curve {}\n", c.name);
    for comp in &c.components {
        out.push_str("component cyclic\n");
        for p in &comp.points {
            let axis = match p.axis {
                Axis::V => "v",
                Axis::H => "h",
            };
            match p.height {
                Some(h) => out.push_str(&format!("pt {axis} {} height {h}\n", p.slot)),
                None => out.push_str(&format!("pt {axis} {}\n", p.slot)),
            }
        }
        for s in &comp.segs {
            out.push_str(&format!("seg {}\n", s.token()));
        }
    }
    for (label, (ci, pi)) in &c.marks {
        let base: usize = c.components[..*ci].iter().map(|k| k.len()).sum();
        out.push_str(&format!("mark {label} {}\n", base + pi));
    }
    out
}

pub fn print_complex(c: &ChainComplex) -> String {
    let mut out = format!("complex {}\n", c.name);
    for g in &c.gens {
        out.push_str(&format!("gen {g}\n"));
    }
    for (i, db) in c.boundary.iter().enumerate() {
        for j in db {
            out.push_str(&format!("d {} {}\n", c.gens[i], c.gens[*j]));
        }
    }
    for (label, set) in &c.marks {
        let names: Vec<&str> = set.iter().map(|g| c.gens[*g].as_str()).collect();
        out.push_str(&format!("mark {label} {}\n", names.join(" ")));
    }
    out
}

/// Tokenized non-comment lines with their 1-based line numbers.
fn lines(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
        .collect()
}

fn parse_basis(line: usize, tok: &str) -> Result<Basis, ParseError> {
    Basis::parse_token(tok).ok_or_else(|| err(line, format!("unknown algebra token {tok}")))
}

fn parse_gen(line: usize, toks: &[&str]) -> Result<Generator, ParseError> {
    if toks.len() != 3 && !(toks.len() == 5 && toks[3] == "height") {
        return Err(err(line, "expected: gen <id> <i0|i1> [height <int>]"));
    }
    let idem = parse_basis(line, toks[2])?;
    if !idem.is_idempotent() {
        return Err(err(line, format!("{} is not an idempotent", toks[2])));
    }
    let mut g = Generator::new(toks[1], idem);
    if toks.len() == 5 {
        g.height =
            Some(toks[4].parse().map_err(|_| err(line, format!("bad height {}", toks[4])))?);
    }
    Ok(g)
}

pub fn parse_type_d(text: &str) -> Result<TypeD, ParseError> {
    let mut it = lines(text).into_iter();
    let (l0, head) = it.next().ok_or_else(|| err(0, "empty input"))?;
    if head.len() != 2 || head[0] != "typeD" {
        return Err(err(l0, "expected header: typeD <name>"));
    }
    let mut d = TypeD::new(head[1]);
    for (ln, toks) in it {
        match toks[0] {
            "gen" => {
                let g = parse_gen(ln, &toks)?;
                if d.index_of(&g.id).is_some() {
                    return Err(err(ln, format!("duplicate generator {}", g.id)));
                }
                d.add_gen(g);
            }
            "arrow" => {
                if toks.len() != 4 {
                    return Err(err(ln, "expected: arrow <src> <dst> <coeff>"));
                }
                let src = d.index_of(toks[1]).ok_or_else(|| err(ln, format!("unknown generator {}", toks[1])))?;
                let dst = d.index_of(toks[2]).ok_or_else(|| err(ln, format!("unknown generator {}", toks[2])))?;
                d.add_arrow(src, parse_basis(ln, toks[3])?, dst);
            }
            "mark" => {
                if toks.len() < 3 {
                    return Err(err(ln, "expected: mark <label> <id> [<id> ...]"));
                }
                let mut gens = BTreeSet::new();
                for id in &toks[2..] {
                    let g = d.index_of(id).ok_or_else(|| err(ln, format!("unknown generator {id}")))?;
                    gens.insert(g);
                }
                d.marks.push(Mark { label: toks[1].to_string(), gens });
            }
            other => return Err(err(ln, format!("unexpected directive {other}"))),
        }
    }
    d.normalize();
    Ok(d)
}

pub fn parse_type_a(text: &str) -> Result<TypeA, ParseError> {
    let mut it = lines(text).into_iter();
    let (l0, head) = it.next().ok_or_else(|| err(0, "empty input"))?;
    if head.len() != 2 || head[0] != "typeA" {
        return Err(err(l0, "expected header: typeA <name>"));
    }
    let mut m = TypeA::new(head[1]);
    for (ln, toks) in it {
        match toks[0] {
            "gen" => {
                let g = parse_gen(ln, &toks)?;
                if m.index_of(&g.id).is_some() {
                    return Err(err(ln, format!("duplicate generator {}", g.id)));
                }
                m.add_gen(g);
            }
            "op" => {
                if toks.len() < 4 {
                    return Err(err(ln, "expected: op <src> <dst> <tok> [<tok> ...]"));
                }
                let src = m.index_of(toks[1]).ok_or_else(|| err(ln, format!("unknown generator {}", toks[1])))?;
                let dst = m.index_of(toks[2]).ok_or_else(|| err(ln, format!("unknown generator {}", toks[2])))?;
                let word = toks[3..]
                    .iter()
                    .map(|t| parse_basis(ln, t))
                    .collect::<Result<Vec<_>, _>>()?;
                m.add_op(src, word, dst);
            }
            "mark" => {
                if toks.len() < 3 {
                    return Err(err(ln, "expected: mark <label> <id> [<id> ...]"));
                }
                let mut gens = BTreeSet::new();
                for id in &toks[2..] {
                    let g = m.index_of(id).ok_or_else(|| err(ln, format!("unknown generator {id}")))?;
                    gens.insert(g);
                }
                m.marks.push(Mark { label: toks[1].to_string(), gens });
            }
            other => return Err(err(ln, format!("unexpected directive {other}"))),
        }
    }
    m.normalize();
    Ok(m)
}

pub fn parse_dd(text: &str) -> Result<DdBimodule, ParseError> {
    let mut it = lines(text).into_iter();
    let (l0, head) = it.next().ok_or_else(|| err(0, "empty input"))?;
    if head.len() != 2 || head[0] != "dd" {
        return Err(err(l0, "expected header: dd <name>"));
    }
    let mut dd = DdBimodule { name: head[1].to_string(), terms: Vec::new() };
    for (ln, toks) in it {
        match toks[0] {
            "gen" => {
                if toks.len() != 4 || DualGen::parse_token(toks[1]).is_none() {
                    return Err(err(ln, "expected: gen <dual> <i> <i>"));
                }
            }
            "term" => {
                if toks.len() != 5 {
                    return Err(err(ln, "expected: term <src> <dst> <a> <b>"));
                }
                let src = DualGen::parse_token(toks[1])
                    .ok_or_else(|| err(ln, format!("unknown dual generator {}", toks[1])))?;
                let dst = DualGen::parse_token(toks[2])
                    .ok_or_else(|| err(ln, format!("unknown dual generator {}", toks[2])))?;
                dd.terms.push(DdTerm {
                    src,
                    a: parse_basis(ln, toks[3])?,
                    dst,
                    b: parse_basis(ln, toks[4])?,
                });
            }
            other => return Err(err(ln, format!("unexpected directive {other}"))),
        }
    }
    Ok(dd)
}

pub fn parse_curve(text: &str) -> Result<Multicurve, ParseError> {
    let mut it = lines(text).into_iter().peekable();
    let (l0, head) = it.next().ok_or_else(|| err(0, "empty input"))?;
    if head.len() != 2 || head[0] != "curve" {
        return Err(err(l0, "expected header: curve <name>"));
    }
    let mut curve = Multicurve::new(head[1]);
    let mut marks: Vec<(String, usize)> = Vec::new();
    let mut current: Option<Component> = None;
    for (ln, toks) in it {
        match toks[0] {
            "component" => {
                if let Some(c) = current.take() {
                    curve.components.push(c);
                }
                current = Some(Component { points: Vec::new(), segs: Vec::new() });
            }
            "pt" => {
                let c = current.as_mut().ok_or_else(|| err(ln, "pt before component"))?;
                if toks.len() != 3 && !(toks.len() == 5 && toks[3] == "height") {
                    return Err(err(ln, "expected: pt <v|h> <slot> [height <int>]"));
                }
                let axis = match toks[1] {
                    "v" => Axis::V,
                    "h" => Axis::H,
                    other => return Err(err(ln, format!("bad edge {other}"))),
                };
                let slot = toks[2].parse().map_err(|_| err(ln, "bad slot"))?;
                let height = if toks.len() == 5 {
                    Some(toks[4].parse().map_err(|_| err(ln, "bad height"))?)
                } else {
                    None
                };
                c.points.push(EdgePoint { axis, slot, height });
            }
            "seg" => {
                let c = current.as_mut().ok_or_else(|| err(ln, "seg before component"))?;
                if toks.len() != 2 {
                    return Err(err(ln, "expected: seg <kind>"));
                }
                let kind = SegKind::parse_token(toks[1])
                    .ok_or_else(|| err(ln, format!("unknown segment kind {}", toks[1])))?;
                c.segs.push(kind);
            }
            "mark" => {
                if toks.len() != 3 {
                    return Err(err(ln, "expected: mark <label> <index>"));
                }
                let idx = toks[2].parse().map_err(|_| err(ln, "bad index"))?;
                marks.push((toks[1].to_string(), idx));
            }
            other => return Err(err(ln, format!("unexpected directive {other}"))),
        }
    }
    if let Some(c) = current.take() {
        curve.components.push(c);
    }
    for (label, idx) in marks {
        let mut rest = idx;
        let mut placed = false;
        for (ci, c) in curve.components.iter().enumerate() {
            if rest < c.len() {
                curve.marks.push((label.clone(), (ci, rest)));
                placed = true;
                break;
            }
            rest -= c.len();
        }
        if !placed {
            return Err(err(0, format!("mark {label} index out of range")));
        }
    }
    curve.validate().map_err(|e| err(0, e.to_string()))?;
    Ok(curve)
}

pub fn parse_complex(text: &str) -> Result<ChainComplex, ParseError> {
    let mut it = lines(text).into_iter();
    let (l0, head) = it.next().ok_or_else(|| err(0, "empty input"))?;
    if head.len() != 2 || head[0] != "complex" {
        return Err(err(l0, "expected header: complex <name>"));
    }
    let mut gens: Vec<String> = Vec::new();
    let mut diffs: Vec<(usize, String, String)> = Vec::new();
    let mut marks: Vec<(usize, String, Vec<String>)> = Vec::new();
    for (ln, toks) in it {
        match toks[0] {
            "gen" => {
                if toks.len() != 2 {
                    return Err(err(ln, "expected: gen <id>"));
                }
                gens.push(toks[1].to_string());
            }
            "d" => {
                if toks.len() != 3 {
                    return Err(err(ln, "expected: d <src> <dst>"));
                }
                diffs.push((ln, toks[1].to_string(), toks[2].to_string()));
            }
            "mark" => {
                if toks.len() < 3 {
                    return Err(err(ln, "expected: mark <label> <id> [<id> ...]"));
                }
                marks.push((ln, toks[1].to_string(), toks[2..].iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(err(ln, format!("unexpected directive {other}"))),
        }
    }
    let find = |ln: usize, id: &str| {
        gens.iter().position(|g| g == id).ok_or_else(|| err(ln, format!("unknown generator {id}")))
    };
    let mut boundary = vec![BTreeSet::new(); gens.len()];
    for (ln, s, t) in diffs {
        let (si, ti) = (find(ln, &s)?, find(ln, &t)?);
        let b: &mut BTreeSet<usize> = &mut boundary[si];
        if !b.remove(&ti) {
            b.insert(ti);
        }
    }
    let mut out_marks = Vec::new();
    for (ln, label, ids) in marks {
        let mut set = BTreeSet::new();
        for id in ids {
            set.insert(find(ln, &id)?);
        }
        out_marks.push((label, set));
    }
    Ok(ChainComplex { name: head[1].to_string(), gens, boundary, marks: out_marks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves;

    #[test]
    fn typed_round_trip() {
        let d0 = curves::torus_knot_curve(2, 3).unwrap().to_type_d().unwrap();
        let text = print_type_d(&d0);
        let d1 = parse_type_d(&text).unwrap();
        assert_eq!(print_type_d(&d1), text);
        assert_eq!(d0.fingerprint(), d1.fingerprint());
    }

    #[test]
    fn typea_round_trip() {
        let m0 = curves::figure_eight_curve().to_type_a().unwrap();
        let text = print_type_a(&m0);
        let m1 = parse_type_a(&text).unwrap();
        assert_eq!(print_type_a(&m1), text);
    }

    #[test]
    fn curve_round_trip() {
        let c0 = curves::figure_eight_curve();
        let text = print_curve(&c0);
        let c1 = parse_curve(&text).unwrap();
        assert_eq!(print_curve(&c1), text);
    }

    #[test]
    fn dd_round_trip() {
        let az = crate::az::build_az();
        let text = print_dd(&az);
        let back = parse_dd(&text).unwrap();
        assert_eq!(back.terms, az.terms);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "typeD x\ngen a i0\narrow a b r1\n";
        let e = parse_type_d(bad).unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# header comment\ntypeD x\n\ngen a i0\n# trailing\n";
        let d = parse_type_d(text).unwrap();
        assert_eq!(d.gens.len(), 1);
    }
}
