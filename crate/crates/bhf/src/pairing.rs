//! Box tensor of a type-A module with a type-D structure into an F2 chain
//! complex, plus homology and class queries by Gaussian elimination.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::Basis;
use crate::structures::{TypeA, TypeD};

#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub name: String,
    pub gens: Vec<String>,
    /// boundary[i] = support of the boundary of generator i.
    pub boundary: Vec<BTreeSet<usize>>,
    pub marks: Vec<(String, BTreeSet<usize>)>,
}

#[derive(Clone, Debug)]
pub enum PairingError {
    BoundarySquared { gen: String, residue: Vec<String> },
    MixedMark { label: String },
}

impl fmt::Display for PairingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairingError::BoundarySquared { gen, residue } => {
                write!(f, "boundary squared nonzero at {gen}: {{{}}}", residue.join(","))
            }
            PairingError::MixedMark { label } => write!(f, "mark {label} mixes idempotents"),
        }
    }
}

impl std::error::Error for PairingError {}

fn toggle(set: &mut BTreeSet<usize>, x: usize) {
    if !set.remove(&x) {
        set.insert(x);
    }
}

/// The pairing differential: for every delta-arrow path in the type-D side
/// whose coefficient word is matched by a type-A table entry, the pair
/// generator maps to the pair of the operation output with the path end.
pub fn box_tensor(m: &TypeA, d: &TypeD) -> Result<ChainComplex, PairingError> {
    let mut gens: Vec<(usize, usize)> = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (xi, x) in m.gens.iter().enumerate() {
        for (yi, y) in d.gens.iter().enumerate() {
            if x.idem == y.idem {
                index.insert((xi, yi), gens.len());
                gens.push((xi, yi));
            }
        }
    }
    let names: Vec<String> =
        gens.iter().map(|(x, y)| format!("{}*{}", m.gens[*x].id, d.gens[*y].id)).collect();

    // Group operations by word for path matching.
    let mut ops_by_word: BTreeMap<&[Basis], Vec<(usize, usize)>> = BTreeMap::new();
    for op in &m.ops {
        ops_by_word.entry(op.word.as_slice()).or_default().push((op.src, op.dst));
    }
    let maxlen = m.max_word_len();

    let mut arrows_by_src: Vec<Vec<(Basis, usize)>> = vec![Vec::new(); d.gens.len()];
    for a in &d.arrows {
        arrows_by_src[a.src].push((a.coeff, a.dst));
    }

    let mut boundary: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); gens.len()];
    if maxlen > 0 {
        for (gi, &(xi, y0)) in gens.iter().enumerate() {
            // Enumerate coefficient words along arrow paths from y0.
            let mut stack: Vec<(usize, Vec<Basis>)> = vec![(y0, Vec::new())];
            while let Some((y, word)) = stack.pop() {
                if !word.is_empty() {
                    if let Some(ops) = ops_by_word.get(word.as_slice()) {
                        for &(src, dst) in ops {
                            if src == xi {
                                toggle(&mut boundary[gi], index[&(dst, y)]);
                            }
                        }
                    }
                }
                if word.len() < maxlen {
                    for &(coeff, dst) in &arrows_by_src[y] {
                        let mut w = word.clone();
                        w.push(coeff);
                        stack.push((dst, w));
                    }
                }
            }
        }
    }

    let complex = ChainComplex {
        name: format!("{}<>{}", m.name, d.name),
        gens: names,
        boundary,
        marks: {
            let mut marks = Vec::new();
            for ma in &m.marks {
                for md in &d.marks {
                    let mut set = BTreeSet::new();
                    for &x in &ma.gens {
                        for &y in &md.gens {
                            if let Some(&g) = index.get(&(x, y)) {
                                toggle(&mut set, g);
                            }
                        }
                    }
                    marks.push((format!("{}x{}", ma.label, md.label), set));
                }
            }
            marks
        },
    };
    complex.check_boundary_squared()?;
    Ok(complex)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassVerdict {
    NotACycle,
    Zero,
    Nonzero,
}

impl fmt::Display for ClassVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassVerdict::NotACycle => "not-a-cycle",
            ClassVerdict::Zero => "zero",
            ClassVerdict::Nonzero => "nonzero",
        })
    }
}

impl ChainComplex {
    pub fn check_boundary_squared(&self) -> Result<(), PairingError> {
        for (i, db) in self.boundary.iter().enumerate() {
            let mut acc: BTreeSet<usize> = BTreeSet::new();
            for &j in db {
                for &k in &self.boundary[j] {
                    toggle(&mut acc, k);
                }
            }
            if !acc.is_empty() {
                return Err(PairingError::BoundarySquared {
                    gen: self.gens[i].clone(),
                    residue: acc.iter().map(|g| self.gens[*g].clone()).collect(),
                });
            }
        }
        Ok(())
    }

    pub fn boundary_of(&self, e: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &x in e {
            for &y in &self.boundary[x] {
                toggle(&mut out, y);
            }
        }
        out
    }

    pub fn homology(&self) -> Homology {
        // Column echelon basis of the image of the boundary map.
        let mut image: Vec<BTreeSet<usize>> = Vec::new();
        for db in &self.boundary {
            let mut v = db.clone();
            reduce_against(&mut v, &image);
            if !v.is_empty() {
                image.push(v);
                image.sort_by_key(|v| *v.iter().next().unwrap());
            }
        }
        let rank_image = image.len();
        Homology { n: self.gens.len(), image, rank_image }
    }
}

#[derive(Clone, Debug)]
pub struct Homology {
    n: usize,
    image: Vec<BTreeSet<usize>>,
    rank_image: usize,
}

fn reduce_against(v: &mut BTreeSet<usize>, basis: &[BTreeSet<usize>]) {
    loop {
        let Some(&lead) = v.iter().next() else { return };
        match basis.iter().find(|b| *b.iter().next().unwrap() == lead) {
            Some(b) => {
                for x in b {
                    toggle(v, *x);
                }
            }
            None => return,
        }
    }
}

impl Homology {
    /// F2 rank of the homology: generators minus twice the boundary rank.
    pub fn rank(&self) -> usize {
        self.n - 2 * self.rank_image
    }

    pub fn class_query(&self, complex: &ChainComplex, e: &BTreeSet<usize>) -> ClassVerdict {
        if !complex.boundary_of(e).is_empty() {
            return ClassVerdict::NotACycle;
        }
        let mut v = e.clone();
        reduce_against(&mut v, &self.image);
        if v.is_empty() {
            ClassVerdict::Zero
        } else {
            ClassVerdict::Nonzero
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Basis::*;
    use crate::structures::Generator;

    #[test]
    fn empty_complex_has_rank_zero() {
        let c = ChainComplex {
            name: "empty".into(),
            gens: vec![],
            boundary: vec![],
            marks: vec![],
        };
        assert_eq!(c.homology().rank(), 0);
    }

    #[test]
    fn acyclic_pair() {
        let c = ChainComplex {
            name: "pair".into(),
            gens: vec!["x".into(), "y".into()],
            boundary: vec![[1].into_iter().collect(), BTreeSet::new()],
            marks: vec![],
        };
        let h = c.homology();
        assert_eq!(h.rank(), 0);
        assert_eq!(h.class_query(&c, &[1].into_iter().collect()), ClassVerdict::Zero);
        assert_eq!(h.class_query(&c, &[0].into_iter().collect()), ClassVerdict::NotACycle);
    }

    #[test]
    fn query_respects_addition() {
        // dx = y + z: y and z are homologous nonzero cycles; y + z bounds.
        let c = ChainComplex {
            name: "sum".into(),
            gens: vec!["x".into(), "y".into(), "z".into()],
            boundary: vec![[1, 2].into_iter().collect(), BTreeSet::new(), BTreeSet::new()],
            marks: vec![],
        };
        let h = c.homology();
        assert_eq!(h.rank(), 1);
        assert_eq!(h.class_query(&c, &[1].into_iter().collect()), ClassVerdict::Nonzero);
        assert_eq!(h.class_query(&c, &[2].into_iter().collect()), ClassVerdict::Nonzero);
        assert_eq!(h.class_query(&c, &[1, 2].into_iter().collect()), ClassVerdict::Zero);
    }

    #[test]
    fn box_tensor_matches_paths() {
        // Type-A: m2(x, r1) = y. Type-D: p ->r1 q. Pairing: d(x*p) = y*q.
        let mut m = TypeA::new("m");
        let x = m.add_gen(Generator::new("x", I0));
        let y = m.add_gen(Generator::new("y", I1));
        m.add_op(x, vec![R1], y);
        let mut d = TypeD::new("d");
        let p = d.add_gen(Generator::new("p", I0));
        let q = d.add_gen(Generator::new("q", I1));
        d.add_arrow(p, R1, q);
        let c = box_tensor(&m, &d).unwrap();
        assert_eq!(c.gens.len(), 2);
        let h = c.homology();
        assert_eq!(h.rank(), 0);
    }

    #[test]
    fn box_tensor_multi_step_path() {
        // Type-A: m3(x, r1, r2) = z. Type-D: p ->r1 q ->r2 p'.
        let mut m = TypeA::new("m");
        let x = m.add_gen(Generator::new("x", I0));
        let _y = m.add_gen(Generator::new("y", I1));
        let z = m.add_gen(Generator::new("z", I0));
        m.add_op(x, vec![R1, R2], z);
        let mut d = TypeD::new("d");
        let p = d.add_gen(Generator::new("p", I0));
        let q = d.add_gen(Generator::new("q", I1));
        let p2 = d.add_gen(Generator::new("p2", I0));
        d.add_arrow(p, R1, q);
        d.add_arrow(q, R2, p2);
        let c = box_tensor(&m, &d).unwrap();
        // d(x*p) = z*p2
        let xi = c.gens.iter().position(|g| g == "x*p").unwrap();
        let zi = c.gens.iter().position(|g| g == "z*p2").unwrap();
        assert_eq!(c.boundary[xi], [zi].into_iter().collect());
    }
}
