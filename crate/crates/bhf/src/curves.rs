//! Combinatorial immersed multicurves in the punctured torus.
//!
//! A curve is stored as a train track: cyclic sequences of edge points joined
//! by typed segments. Corner segments sweep a Reeb chord at the puncture
//! (SW: r1, NW: r2 on the module side, NE: r3); the fourth corner carries the
//! basepoint and is silent. Passes cross the square without sweeping a chord.
//!
//! The dictionaries translating segments into type-A operations and type-D
//! arrows are pinned by the relation checkers, the cross-representation
//! oracle, and the filling sanity oracle rather than by drawings.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::Basis;
use crate::poly::{torus_alexander_exponents, PolyError};
use crate::structures::{Generator, Mark, TypeA, TypeD};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axis {
    V,
    H,
}

impl Axis {
    pub fn idem(self) -> Basis {
        match self {
            Axis::V => Basis::I0,
            Axis::H => Basis::I1,
        }
    }

    fn swapped(self) -> Axis {
        match self {
            Axis::V => Axis::H,
            Axis::H => Axis::V,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SegKind {
    CornerSW,
    CornerNW,
    CornerNE,
    /// Basepoint corner: no chord is swept.
    CornerSE,
    PassVV { walk_right: bool },
    PassHH { walk_up: bool },
}

impl SegKind {
    pub fn token(self) -> String {
        match self {
            SegKind::CornerSW => "sw".into(),
            SegKind::CornerNW => "nw".into(),
            SegKind::CornerNE => "ne".into(),
            SegKind::CornerSE => "se".into(),
            SegKind::PassVV { walk_right } => {
                format!("vv{}", if walk_right { "+" } else { "-" })
            }
            SegKind::PassHH { walk_up } => format!("hh{}", if walk_up { "+" } else { "-" }),
        }
    }

    pub fn parse_token(tok: &str) -> Option<SegKind> {
        match tok {
            "sw" => Some(SegKind::CornerSW),
            "nw" => Some(SegKind::CornerNW),
            "ne" => Some(SegKind::CornerNE),
            "se" => Some(SegKind::CornerSE),
            "vv+" => Some(SegKind::PassVV { walk_right: true }),
            "vv-" => Some(SegKind::PassVV { walk_right: false }),
            "hh+" => Some(SegKind::PassHH { walk_up: true }),
            "hh-" => Some(SegKind::PassHH { walk_up: false }),
            _ => None,
        }
    }

    fn is_corner(self) -> bool {
        matches!(
            self,
            SegKind::CornerSW | SegKind::CornerNW | SegKind::CornerNE | SegKind::CornerSE
        )
    }

    /// Quarter rotation of the square: corners cycle, passes swap.
    fn rotated(self) -> SegKind {
        match self {
            SegKind::CornerSW => SegKind::CornerNW,
            SegKind::CornerNW => SegKind::CornerNE,
            SegKind::CornerNE => SegKind::CornerSE,
            SegKind::CornerSE => SegKind::CornerSW,
            SegKind::PassVV { walk_right } => SegKind::PassHH { walk_up: walk_right },
            SegKind::PassHH { walk_up } => SegKind::PassVV { walk_right: walk_up },
        }
    }
}

#[derive(Clone, Debug)]
pub struct EdgePoint {
    pub axis: Axis,
    pub slot: i64,
    pub height: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct Component {
    /// Cyclic; segs[i] joins points[i] to points[(i+1) % len].
    pub points: Vec<EdgePoint>,
    pub segs: Vec<SegKind>,
}

#[derive(Clone, Debug)]
pub struct Multicurve {
    pub name: String,
    pub components: Vec<Component>,
    /// label -> (component, point index)
    pub marks: Vec<(String, (usize, usize))>,
}

#[derive(Clone, Debug)]
pub enum CurveError {
    Malformed { what: String },
    Dictionary { what: String },
    Poly(PolyError),
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::Malformed { what } => write!(f, "malformed curve: {what}"),
            CurveError::Dictionary { what } => write!(f, "dictionary failure: {what}"),
            CurveError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CurveError {}

impl From<PolyError> for CurveError {
    fn from(e: PolyError) -> CurveError {
        CurveError::Poly(e)
    }
}

/// One traversal step: segment `seg` walked from point `from` to point `to`.
#[derive(Clone, Copy)]
struct Step {
    seg: usize,
    from: usize,
    to: usize,
}

impl Component {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn steps(&self, reverse: bool) -> Vec<Step> {
        let n = self.len();
        if !reverse {
            (0..n).map(|i| Step { seg: i, from: i, to: (i + 1) % n }).collect()
        } else {
            (0..n)
                .map(|j| {
                    let seg = n - 1 - j;
                    Step { seg, from: (seg + 1) % n, to: seg }
                })
                .collect()
        }
    }

    /// Is this segment, walked in this direction, a forward chord sweep?
    fn chord_forward(&self, st: Step) -> Option<Basis> {
        let from_axis = self.points[st.from].axis;
        match self.segs[st.seg] {
            SegKind::CornerSW if from_axis == Axis::V => Some(Basis::R1),
            SegKind::CornerNW if from_axis == Axis::H => Some(Basis::R2),
            SegKind::CornerNE if from_axis == Axis::V => Some(Basis::R3),
            _ => None,
        }
    }

    fn pass_down(&self, st: Step, reverse: bool) -> bool {
        match self.segs[st.seg] {
            SegKind::PassHH { walk_up } => walk_up == reverse,
            _ => false,
        }
    }
}

impl Multicurve {
    pub fn new(name: impl Into<String>) -> Multicurve {
        Multicurve { name: name.into(), components: Vec::new(), marks: Vec::new() }
    }

    pub fn point_count(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum()
    }

    /// All lift heights carried by the curve, as a sorted multiset.
    pub fn height_multiset(&self) -> Vec<i64> {
        let mut hs: Vec<i64> = self
            .components
            .iter()
            .flat_map(|c| c.points.iter().filter_map(|p| p.height))
            .collect();
        hs.sort_unstable();
        hs
    }

    pub fn validate(&self) -> Result<(), CurveError> {
        let mut seen_slots: BTreeSet<(u8, i64)> = BTreeSet::new();
        for (ci, c) in self.components.iter().enumerate() {
            if c.points.is_empty() || c.points.len() != c.segs.len() {
                return Err(CurveError::Malformed {
                    what: format!("component {ci} has mismatched points and segments"),
                });
            }
            for p in &c.points {
                let key = (matches!(p.axis, Axis::H) as u8, p.slot);
                if !seen_slots.insert(key) {
                    return Err(CurveError::Malformed {
                        what: format!("slot collision on edge at {}", p.slot),
                    });
                }
            }
            let n = c.len();
            for (i, seg) in c.segs.iter().enumerate() {
                let a = c.points[i].axis;
                let b = c.points[(i + 1) % n].axis;
                let ok = match seg {
                    SegKind::PassVV { .. } => a == Axis::V && b == Axis::V,
                    SegKind::PassHH { .. } => a == Axis::H && b == Axis::H,
                    _ => a != b,
                };
                if !ok {
                    return Err(CurveError::Malformed {
                        what: format!("segment {i} of component {ci} joins incompatible edges"),
                    });
                }
            }
        }
        for (label, (ci, pi)) in &self.marks {
            if *ci >= self.components.len() || *pi >= self.components[*ci].len() {
                return Err(CurveError::Malformed {
                    what: format!("mark {label} points outside the curve"),
                });
            }
        }
        Ok(())
    }

    fn gen_id(ci: usize, pi: usize) -> String {
        format!("c{ci}p{pi}")
    }

    /// Read the type-A operation table off the train track.
    pub fn to_type_a(&self) -> Result<TypeA, CurveError> {
        self.validate()?;
        let mut m = TypeA::new(self.name.clone());
        let mut index: Vec<Vec<usize>> = Vec::new();
        for (ci, c) in self.components.iter().enumerate() {
            let mut ids = Vec::new();
            for (pi, p) in c.points.iter().enumerate() {
                let mut g = Generator::new(Self::gen_id(ci, pi), p.axis.idem());
                g.height = p.height;
                ids.push(m.add_gen(g));
            }
            index.push(ids);
        }

        for (ci, c) in self.components.iter().enumerate() {
            let n = c.len();
            // Closed single-point pass components wrap the torus; the first
            // member of the wrapped operation family keeps the table finite
            // and the cross-representation oracle exact.
            if n == 1 {
                match c.segs[0] {
                    SegKind::PassVV { .. } => {
                        m.add_op(index[ci][0], vec![Basis::R3, Basis::R2], index[ci][0]);
                    }
                    SegKind::PassHH { .. } => {
                        m.add_op(index[ci][0], vec![Basis::R2, Basis::R1], index[ci][0]);
                    }
                    _ => {
                        return Err(CurveError::Malformed {
                            what: "single-point component with a corner segment".into(),
                        })
                    }
                }
                continue;
            }
            for reverse in [false, true] {
                let steps = c.steps(reverse);
                for s in 0..n {
                    let st = steps[s];
                    let Some(chord) = c.chord_forward(st) else { continue };
                    match chord {
                        Basis::R1 => {
                            m.add_op(index[ci][st.from], vec![Basis::R1], index[ci][st.to]);
                            // Descent family: SW, k down-passes, NW, optional NE.
                            let mut passes = 0usize;
                            let mut pos = (s + 1) % n;
                            let mut guard = 0usize;
                            loop {
                                guard += 1;
                                if guard > n {
                                    break;
                                }
                                let nx = steps[pos];
                                if c.pass_down(nx, reverse) {
                                    passes += 1;
                                    pos = (pos + 1) % n;
                                    continue;
                                }
                                if c.chord_forward(nx) == Some(Basis::R2) && passes + 2 <= n {
                                    let word = vec![Basis::R12; passes + 1];
                                    m.add_op(index[ci][st.from], word, index[ci][nx.to]);
                                    let after = steps[(pos + 1) % n];
                                    if c.chord_forward(after) == Some(Basis::R3)
                                        && passes + 3 <= n
                                    {
                                        let mut word = vec![Basis::R12; passes];
                                        word.push(Basis::R123);
                                        m.add_op(index[ci][st.from], word, index[ci][after.to]);
                                    }
                                }
                                break;
                            }
                        }
                        Basis::R2 => {
                            m.add_op(index[ci][st.from], vec![Basis::R2], index[ci][st.to]);
                            let nx = steps[(s + 1) % n];
                            if c.chord_forward(nx) == Some(Basis::R3) && n >= 2 {
                                m.add_op(index[ci][st.from], vec![Basis::R23], index[ci][nx.to]);
                            }
                        }
                        Basis::R3 => {
                            m.add_op(index[ci][st.from], vec![Basis::R3], index[ci][st.to]);
                        }
                        _ => unreachable!(),
                    }
                }
            }
        }
        m.normalize();
        for (label, (ci, pi)) in &self.marks {
            m.marks.push(Mark {
                label: label.clone(),
                gens: [index[*ci][*pi]].into_iter().collect(),
            });
        }
        m.check(m.max_word_len() + 1).map_err(|e| CurveError::Dictionary {
            what: format!("type-A dictionary produced an invalid module: {e}"),
        })?;
        Ok(m)
    }

    /// Read the type-D arrow set off the train track.
    pub fn to_type_d(&self) -> Result<TypeD, CurveError> {
        self.validate()?;
        let mut d = TypeD::new(self.name.clone());
        let mut index: Vec<Vec<usize>> = Vec::new();
        for (ci, c) in self.components.iter().enumerate() {
            let mut ids = Vec::new();
            for (pi, p) in c.points.iter().enumerate() {
                let mut g = Generator::new(Self::gen_id(ci, pi), p.axis.idem());
                g.height = p.height;
                ids.push(d.add_gen(g));
            }
            index.push(ids);
        }
        for (ci, c) in self.components.iter().enumerate() {
            let n = c.len();
            for (i, seg) in c.segs.iter().enumerate() {
                let p = index[ci][i];
                let q = index[ci][(i + 1) % n];
                let (pv, qv) = (c.points[i].axis, c.points[(i + 1) % n].axis);
                match seg {
                    SegKind::CornerSW => {
                        let (v, h) = if pv == Axis::V { (p, q) } else { (q, p) };
                        d.add_arrow(v, Basis::R1, h);
                    }
                    SegKind::CornerNW | SegKind::CornerNE => {
                        let (v, h) = if pv == Axis::V { (p, q) } else { (q, p) };
                        d.add_arrow(v, Basis::R3, h);
                    }
                    SegKind::CornerSE => {}
                    SegKind::PassVV { walk_right } => {
                        let (l, r) = if *walk_right { (p, q) } else { (q, p) };
                        d.add_arrow(l, Basis::R12, r);
                    }
                    SegKind::PassHH { walk_up } => {
                        let (lo, hi) = if *walk_up { (p, q) } else { (q, p) };
                        d.add_arrow(lo, Basis::R23, hi);
                    }
                }
                let _ = (pv, qv);
            }
        }
        d.normalize();
        for (label, (ci, pi)) in &self.marks {
            d.marks.push(Mark {
                label: label.clone(),
                gens: [index[*ci][*pi]].into_iter().collect(),
            });
        }
        d.check().map_err(|e| CurveError::Dictionary {
            what: format!("type-D dictionary produced an invalid structure: {e}"),
        })?;
        Ok(d)
    }

    /// Quarter rotation: edges swap roles, marks ride along, lift heights are
    /// dropped (undefined after rotation).
    pub fn rotate_quarter(&self) -> Multicurve {
        Multicurve {
            name: format!("rot({})", self.name),
            components: self
                .components
                .iter()
                .map(|c| Component {
                    points: c
                        .points
                        .iter()
                        .map(|p| EdgePoint { axis: p.axis.swapped(), slot: p.slot, height: None })
                        .collect(),
                    segs: c.segs.iter().map(|s| s.rotated()).collect(),
                })
                .collect(),
            marks: self.marks.clone(),
        }
    }

    /// Train track as a graph description for external rendering.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("graph \"{}\" {{\n", self.name));
        for (ci, c) in self.components.iter().enumerate() {
            for (pi, p) in c.points.iter().enumerate() {
                let axis = if p.axis == Axis::V { "v" } else { "h" };
                let h = p.height.map(|h| format!(" h={h}")).unwrap_or_default();
                out.push_str(&format!(
                    "  {} [label=\"{axis}{}{h}\"];\n",
                    Self::gen_id(ci, pi),
                    p.slot
                ));
            }
            let n = c.len();
            for (i, seg) in c.segs.iter().enumerate() {
                out.push_str(&format!(
                    "  {} -- {} [label=\"{}\"];\n",
                    Self::gen_id(ci, i),
                    Self::gen_id(ci, (i + 1) % n),
                    seg.token()
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

// ---------------------------------------------------------------------------
// Built-in curves
// ---------------------------------------------------------------------------

fn fresh_slots(n: usize, next: &mut i64) -> Vec<i64> {
    let start = *next;
    *next += n as i64;
    (0..n as i64).map(|i| start + i).collect()
}

/// Staircase curve from a strictly decreasing, negation-symmetric exponent
/// list, one vertical crossing per exponent. `[0]` is the unknot curve.
pub fn staircase_curve(exponents: &[i64]) -> Result<Multicurve, CurveError> {
    if exponents.is_empty() || exponents.len() % 2 == 0 {
        return Err(CurveError::Malformed {
            what: "staircase needs an odd number of exponents".into(),
        });
    }
    if exponents.windows(2).any(|w| w[0] <= w[1]) {
        return Err(CurveError::Malformed { what: "exponents must strictly decrease".into() });
    }
    let mirrored: Vec<i64> = exponents.iter().rev().map(|x| -x).collect();
    if mirrored != exponents {
        return Err(CurveError::Malformed {
            what: "exponents must be symmetric under negation".into(),
        });
    }

    let name = format!(
        "staircase[{}]",
        exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    );
    let mut curve = Multicurve::new(name);
    let mut vslot = 0i64;
    let mut hslot = 0i64;

    if exponents == [0] {
        curve.components.push(Component {
            points: vec![EdgePoint { axis: Axis::V, slot: 0, height: Some(0) }],
            segs: vec![SegKind::PassVV { walk_right: true }],
        });
        return Ok(curve);
    }

    let genus = exponents[0];
    let steps = exponents.len() - 1;
    let mut points: Vec<EdgePoint> = Vec::new();
    let mut segs: Vec<SegKind> = Vec::new();

    for (j, window) in exponents.windows(2).enumerate() {
        let gap = (window[0] - window[1]) as usize;
        points.push(EdgePoint {
            axis: Axis::V,
            slot: fresh_slots(1, &mut vslot)[0],
            height: Some(-window[0]),
        });
        let (first, last) = if j == 0 {
            (SegKind::CornerSW, SegKind::CornerNE)
        } else if j % 2 == 1 {
            (SegKind::CornerSW, SegKind::CornerNW)
        } else {
            (SegKind::CornerSE, SegKind::CornerNE)
        };
        segs.push(first);
        for slot in fresh_slots(gap, &mut hslot) {
            points.push(EdgePoint { axis: Axis::H, slot, height: None });
            segs.push(SegKind::PassHH { walk_up: false });
        }
        // The last chain segment joins the final chain point to the next
        // vertical crossing; replace the trailing pass with the corner.
        segs.pop();
        segs.push(last);
        let _ = steps;
    }
    points.push(EdgePoint {
        axis: Axis::V,
        slot: fresh_slots(1, &mut vslot)[0],
        height: Some(-exponents[steps]),
    });

    // Closure: climb back from the bottom of the staircase to the top.
    segs.push(SegKind::CornerNE);
    for slot in fresh_slots((2 * genus) as usize, &mut hslot) {
        points.push(EdgePoint { axis: Axis::H, slot, height: None });
        segs.push(SegKind::PassHH { walk_up: true });
    }
    segs.pop();
    segs.push(SegKind::CornerSE);

    debug_assert_eq!(points.len(), segs.len());
    curve.components.push(Component { points, segs });
    Ok(curve)
}

/// Staircase of the (a,b) torus knot, exponents from the symmetrized
/// Alexander polynomial by exact division.
pub fn torus_knot_curve(a: i64, b: i64) -> Result<Multicurve, CurveError> {
    let exps = torus_alexander_exponents(a, b)?;
    let mut c = staircase_curve(&exps)?;
    c.name = format!("torus({a},{b})");
    Ok(c)
}

/// The figure-eight complement curve in the presentation with lift heights
/// on the horizontal edge (the parametrization used when gluing meridian to
/// meridian): a one-crossing line component plus a closed component with
/// height profile 1, 0, 0, -1.
pub fn figure_eight_curve() -> Multicurve {
    use SegKind::*;
    let mut curve = Multicurve::new("fig8");
    let p = |axis, slot, height: Option<i64>| EdgePoint { axis, slot, height };
    // Walk: T(-1) k I(0) l' B(+1)... points in cyclic order with segments
    // between consecutive ones. Heights sit on the horizontal-edge points.
    curve.components.push(Component {
        points: vec![
            p(Axis::H, 0, Some(-1)), // 0: T
            p(Axis::V, 0, None),     // 1
            p(Axis::H, 1, Some(0)),  // 2: I
            p(Axis::V, 1, None),     // 3
            p(Axis::H, 2, Some(1)),  // 4: B
            p(Axis::V, 2, None),     // 5
            p(Axis::H, 3, Some(0)),  // 6: E
            p(Axis::V, 3, None),     // 7
        ],
        segs: vec![CornerNW, CornerNE, CornerSW, CornerSE, CornerNE, CornerNW, CornerSE, CornerSW],
    });
    // The line component: a single crossing at height zero.
    curve.components.push(Component {
        points: vec![p(Axis::H, 4, Some(0))],
        segs: vec![PassHH { walk_up: true }],
    });
    curve
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slope {
    Infinity,
    Zero,
    One,
    MinusOne,
}

impl Slope {
    pub fn parse(s: &str) -> Option<Slope> {
        match s {
            "inf" | "infty" | "oo" => Some(Slope::Infinity),
            "0" => Some(Slope::Zero),
            "1" => Some(Slope::One),
            "-1" => Some(Slope::MinusOne),
            _ => None,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Slope::Infinity => "inf",
            Slope::Zero => "0",
            Slope::One => "1",
            Slope::MinusOne => "-1",
        }
    }
}

/// Embedded closed curve of the given slope avoiding the basepoint.
pub fn solid_torus_curve(slope: Slope) -> Multicurve {
    let mut curve = Multicurve::new(format!("solidtorus({})", slope.token()));
    match slope {
        Slope::Zero => {
            curve.components.push(Component {
                points: vec![EdgePoint { axis: Axis::V, slot: 0, height: None }],
                segs: vec![SegKind::PassVV { walk_right: true }],
            });
        }
        Slope::Infinity => {
            curve.components.push(Component {
                points: vec![EdgePoint { axis: Axis::H, slot: 0, height: None }],
                segs: vec![SegKind::PassHH { walk_up: true }],
            });
        }
        Slope::One => {
            curve.components.push(Component {
                points: vec![
                    EdgePoint { axis: Axis::V, slot: 0, height: None },
                    EdgePoint { axis: Axis::H, slot: 0, height: None },
                ],
                segs: vec![SegKind::CornerSW, SegKind::CornerNE],
            });
        }
        Slope::MinusOne => {
            curve.components.push(Component {
                points: vec![
                    EdgePoint { axis: Axis::V, slot: 0, height: None },
                    EdgePoint { axis: Axis::H, slot: 0, height: None },
                ],
                segs: vec![SegKind::CornerNW, SegKind::CornerSE],
            });
        }
    }
    curve
}

pub fn unknot_curve() -> Multicurve {
    let mut c = staircase_curve(&[0]).expect("unknot staircase");
    c.name = "unknot".into();
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Basis::*;

    #[test]
    fn unknot_is_one_vertical_point() {
        let u = unknot_curve();
        assert_eq!(u.components.len(), 1);
        assert_eq!(u.point_count(), 1);
        assert_eq!(u.height_multiset(), vec![0]);
        let m = u.to_type_a().unwrap();
        assert_eq!(m.gens.len(), 1);
        // Only the wrapped family stub.
        assert!(m.ops.iter().all(|o| o.word == vec![R3, R2]));
        let d = u.to_type_d().unwrap();
        assert_eq!(d.gens.len(), 1);
        assert_eq!(d.arrows.len(), 1);
        assert_eq!(d.arrows[0].coeff, R12);
    }

    #[test]
    fn trefoil_counts_and_heights() {
        let t = torus_knot_curve(2, 3).unwrap();
        assert_eq!(t.height_multiset(), vec![-1, 0, 1]);
        assert_eq!(t.point_count(), 7);
        let m = t.to_type_a().unwrap();
        let d = t.to_type_d().unwrap();
        assert_eq!(m.gens.len(), 7);
        assert_eq!(d.gen_count_by_idem(), (3, 4));
    }

    #[test]
    fn trefoil_innermost_attachment() {
        // The unique height-0 generator supports a nonzero m2 with r123.
        let t = torus_knot_curve(2, 3).unwrap();
        let m = t.to_type_a().unwrap();
        let hits: Vec<usize> = (0..m.gens.len())
            .filter(|x| m.gens[*x].height == Some(0))
            .collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(m.apply(hits[0], &[R123]).len(), 1);
    }

    #[test]
    fn staircase_heights_match_exponents() {
        for (a, b) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)] {
            let mut exps = torus_alexander_exponents(a, b).unwrap();
            let t = torus_knot_curve(a, b).unwrap();
            exps.sort_unstable();
            assert_eq!(t.height_multiset(), exps, "T({a},{b})");
            t.to_type_a().unwrap();
            t.to_type_d().unwrap();
        }
    }

    #[test]
    fn staircase_rejects_bad_input() {
        assert!(staircase_curve(&[1, 0]).is_err());
        assert!(staircase_curve(&[2, 0, -1]).is_err());
        assert!(staircase_curve(&[1, 1, 0]).is_err());
    }

    #[test]
    fn fig8_profile() {
        let c = figure_eight_curve();
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.height_multiset(), vec![-1, 0, 0, 0, 1]);
        let m = c.to_type_a().unwrap();
        assert_eq!(m.gens.len(), 9);
        let d = c.to_type_d().unwrap();
        d.check().unwrap();
    }

    #[test]
    fn fig8_m2_identities() {
        let c = figure_eight_curve();
        let m = c.to_type_a().unwrap();
        let t = (0..m.gens.len()).find(|x| m.gens[*x].height == Some(-1)).unwrap();
        let b = (0..m.gens.len()).find(|x| m.gens[*x].height == Some(1)).unwrap();
        // m2(T, r23) is a single height-0 generator.
        let i = m.apply(t, &[R23]);
        assert_eq!(i.len(), 1);
        assert_eq!(m.gens[*i.iter().next().unwrap()].height, Some(0));
        // Some height-0 generator maps to B under r23.
        let zeros: Vec<usize> =
            (0..m.gens.len()).filter(|x| m.gens[*x].height == Some(0)).collect();
        assert_eq!(zeros.len(), 3);
        assert!(zeros.iter().any(|z| m.apply(*z, &[R23]) == [b].into_iter().collect()));
    }

    #[test]
    fn rotation_fourth_power_is_identity() {
        let t = torus_knot_curve(2, 3).unwrap();
        let r4 = t.rotate_quarter().rotate_quarter().rotate_quarter().rotate_quarter();
        for (c0, c4) in t.components.iter().zip(r4.components.iter()) {
            assert_eq!(c0.segs, c4.segs);
            for (p0, p4) in c0.points.iter().zip(c4.points.iter()) {
                assert_eq!(p0.axis, p4.axis);
            }
        }
    }

    #[test]
    fn rotation_of_vertical_is_horizontal() {
        let v = solid_torus_curve(Slope::Infinity);
        let r = v.rotate_quarter();
        assert_eq!(r.components[0].points[0].axis, Axis::V);
    }

    #[test]
    fn slope_one_has_one_crossing_per_edge() {
        let c = solid_torus_curve(Slope::One);
        assert_eq!(c.point_count(), 2);
        let d = c.to_type_d().unwrap();
        assert_eq!(d.gens.len(), 2);
        assert_eq!(d.arrows.len(), 2);
        let coeffs: BTreeSet<Basis> = d.arrows.iter().map(|a| a.coeff).collect();
        assert_eq!(coeffs, [R1, R3].into_iter().collect());
    }
}
