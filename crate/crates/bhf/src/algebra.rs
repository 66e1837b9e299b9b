//! The torus algebra over F2: eight basis elements, two idempotents,
//! and the chord multiplication table.

use std::fmt;

/// Basis elements of the torus algebra. `I0`/`I1` are the idempotents,
/// the rest are the Reeb chord elements.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[repr(u8)]
pub enum Basis {
    I0 = 0,
    I1 = 1,
    R1 = 2,
    R2 = 3,
    R3 = 4,
    R12 = 5,
    R23 = 6,
    R123 = 7,
}

pub const BASIS: [Basis; 8] = [
    Basis::I0,
    Basis::I1,
    Basis::R1,
    Basis::R2,
    Basis::R3,
    Basis::R12,
    Basis::R23,
    Basis::R123,
];

impl Basis {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Basis {
        BASIS[i]
    }

    /// Text token used by every serialization format.
    pub fn token(self) -> &'static str {
        match self {
            Basis::I0 => "i0",
            Basis::I1 => "i1",
            Basis::R1 => "r1",
            Basis::R2 => "r2",
            Basis::R3 => "r3",
            Basis::R12 => "r12",
            Basis::R23 => "r23",
            Basis::R123 => "r123",
        }
    }

    pub fn parse_token(tok: &str) -> Option<Basis> {
        BASIS.iter().copied().find(|b| b.token() == tok)
    }

    pub fn is_idempotent(self) -> bool {
        matches!(self, Basis::I0 | Basis::I1)
    }

    pub fn is_reeb(self) -> bool {
        !self.is_idempotent()
    }

    /// ι₀ρ₁ι₁, ι₁ρ₂ι₀, ι₀ρ₃ι₁, ι₀ρ₁₂ι₀, ι₁ρ₂₃ι₁, ι₀ρ₁₂₃ι₁.
    pub fn left_idem(self) -> Basis {
        match self {
            Basis::I0 | Basis::R1 | Basis::R3 | Basis::R12 | Basis::R123 => Basis::I0,
            Basis::I1 | Basis::R2 | Basis::R23 => Basis::I1,
        }
    }

    pub fn right_idem(self) -> Basis {
        match self {
            Basis::I0 | Basis::R2 | Basis::R12 => Basis::I0,
            Basis::I1 | Basis::R1 | Basis::R3 | Basis::R23 | Basis::R123 => Basis::I1,
        }
    }

    /// The other idempotent.
    pub fn complement_idem(self) -> Basis {
        match self {
            Basis::I0 => Basis::I1,
            Basis::I1 => Basis::I0,
            _ => panic!("complement_idem on non-idempotent {:?}", self),
        }
    }

    /// Basis multiplication; `None` means the product vanishes.
    /// Chords concatenate only in increasing boundary order:
    /// ρ₁ρ₂=ρ₁₂, ρ₂ρ₃=ρ₂₃, ρ₁ρ₂₃=ρ₁₂₃, ρ₁₂ρ₃=ρ₁₂₃.
    pub fn mul(self, rhs: Basis) -> Option<Basis> {
        use Basis::*;
        if self.is_idempotent() {
            return if self == rhs.left_idem() { Some(rhs) } else { None };
        }
        if rhs.is_idempotent() {
            return if rhs == self.right_idem() { Some(self) } else { None };
        }
        match (self, rhs) {
            (R1, R2) => Some(R12),
            (R2, R3) => Some(R23),
            (R1, R23) => Some(R123),
            (R12, R3) => Some(R123),
            _ => None,
        }
    }

    /// The algebra anti-automorphism exchanging the two ends of every chord:
    /// ι₀↔ι₁, ρ₁↔ρ₃, ρ₁₂↔ρ₂₃, fixing ρ₂ and ρ₁₂₃.
    pub fn conj(self) -> Basis {
        use Basis::*;
        match self {
            I0 => I1,
            I1 => I0,
            R1 => R3,
            R3 => R1,
            R12 => R23,
            R23 => R12,
            R2 => R2,
            R123 => R123,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// An F2 linear combination of basis elements, stored as a support bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Element(u8);

impl Element {
    pub const ZERO: Element = Element(0);

    pub fn basis(b: Basis) -> Element {
        Element(1 << b.index())
    }

    /// Two-sided unit ι₀ + ι₁.
    pub fn unit() -> Element {
        Element::basis(Basis::I0) + Element::basis(Basis::I1)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, b: Basis) -> bool {
        self.0 & (1 << b.index()) != 0
    }

    pub fn support(self) -> impl Iterator<Item = Basis> {
        BASIS.into_iter().filter(move |b| self.contains(*b))
    }

    pub fn mul(self, rhs: Element) -> Element {
        let mut out = Element::ZERO;
        for a in self.support() {
            for b in rhs.support() {
                if let Some(p) = a.mul(b) {
                    out = out + Element::basis(p);
                }
            }
        }
        out
    }
}

impl std::ops::Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        Element(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Element {
    fn add_assign(&mut self, rhs: Element) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for b in self.support() {
            if !first {
                f.write_str("+")?;
            }
            f.write_str(b.token())?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_absorption() {
        assert_eq!(Basis::I0.mul(Basis::R1), Some(Basis::R1));
        assert_eq!(Basis::R1.mul(Basis::I1), Some(Basis::R1));
        assert_eq!(Basis::I1.mul(Basis::R1), None);
        assert_eq!(Basis::R1.mul(Basis::I0), None);
        assert_eq!(Basis::I0.mul(Basis::I0), Some(Basis::I0));
        assert_eq!(Basis::I0.mul(Basis::I1), None);
    }

    #[test]
    fn chord_products() {
        assert_eq!(Basis::R1.mul(Basis::R2), Some(Basis::R12));
        assert_eq!(Basis::R2.mul(Basis::R1), None);
        assert_eq!(Basis::R2.mul(Basis::R3), Some(Basis::R23));
        assert_eq!(Basis::R1.mul(Basis::R23), Some(Basis::R123));
        assert_eq!(Basis::R12.mul(Basis::R3), Some(Basis::R123));
        assert_eq!(Basis::R3.mul(Basis::R2), None);
        assert_eq!(Basis::R12.mul(Basis::R12), None);
    }

    #[test]
    fn products_respect_idempotents() {
        for a in BASIS {
            for b in BASIS {
                if let Some(p) = a.mul(b) {
                    assert_eq!(a.right_idem(), b.left_idem(), "{a} * {b}");
                    assert_eq!(p.left_idem(), a.left_idem());
                    assert_eq!(p.right_idem(), b.right_idem());
                }
            }
        }
    }

    #[test]
    fn associativity_exhaustive() {
        // 512 basis triples.
        for a in BASIS {
            for b in BASIS {
                for c in BASIS {
                    let lhs = Element::basis(a).mul(Element::basis(b)).mul(Element::basis(c));
                    let rhs = Element::basis(a).mul(Element::basis(b).mul(Element::basis(c)));
                    assert_eq!(lhs, rhs, "({a}*{b})*{c}");
                }
            }
        }
    }

    #[test]
    fn unit_acts_as_identity() {
        let u = Element::unit();
        for b in BASIS {
            let e = Element::basis(b);
            assert_eq!(u.mul(e), e);
            assert_eq!(e.mul(u), e);
        }
    }

    #[test]
    fn addition_is_mod_two() {
        let e = Element::basis(Basis::R1);
        assert_eq!(e + e, Element::ZERO);
        let f = e + Element::basis(Basis::R23);
        assert_eq!(f.support().count(), 2);
    }

    #[test]
    fn conj_is_anti_automorphism() {
        for a in BASIS {
            for b in BASIS {
                let lhs = a.mul(b).map(Basis::conj);
                let rhs = b.conj().mul(a.conj());
                assert_eq!(lhs, rhs, "conj({a}*{b})");
            }
        }
    }
}
