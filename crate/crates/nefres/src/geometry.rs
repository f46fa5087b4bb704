//! Varieties, Picard lattices, and exact cohomology of line bundles.
//!
//! The registered varieties are projective spaces `P^n`, smooth hyperquadrics
//! `Q^n` with `n >= 3`, and the quadric surface `Q^2` (a product of two
//! projective lines, Picard rank two). Everything here is exact integer
//! arithmetic: cohomology dimension vectors, Euler characteristics on the two
//! surfaces, intersection numbers, and top Segre numbers.
//!
//! Line-bundle cohomology on `Q^n` is not tabulated; it is derived from the
//! cohomology of the ambient projective space through the restriction sequence
//! `0 -> O(k-2) -> O(k) -> O_Q(k) -> 0`, so the values are self-checking
//! against Serre duality.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// The two families of varieties this crate computes on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarietyKind {
    ProjSpace,
    Quadric,
}

/// A projective space `P^n` (n >= 1) or a smooth hyperquadric `Q^n` (n >= 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Variety {
    kind: VarietyKind,
    dim: u32,
}

impl Variety {
    pub fn proj_space(n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidVariety(
                "projective space needs dimension >= 1".into(),
            ));
        }
        Ok(Variety {
            kind: VarietyKind::ProjSpace,
            dim: n,
        })
    }

    pub fn quadric(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidVariety(
                "smooth quadric needs dimension >= 2".into(),
            ));
        }
        Ok(Variety {
            kind: VarietyKind::Quadric,
            dim: n,
        })
    }

    /// Parses the CLI grammar `P<n>` / `Q<n>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (head, tail) = spec.split_at(spec.len().min(1));
        let n: u32 = tail
            .parse()
            .map_err(|_| Error::InvalidVariety(format!("cannot parse `{spec}`")))?;
        match head {
            "P" | "p" => Variety::proj_space(n),
            "Q" | "q" => Variety::quadric(n),
            _ => Err(Error::InvalidVariety(format!("cannot parse `{spec}`"))),
        }
    }

    pub fn kind(&self) -> VarietyKind {
        self.kind
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn is_quadric(&self) -> bool {
        self.kind == VarietyKind::Quadric
    }

    pub fn is_surface(&self) -> bool {
        self.dim == 2
    }

    /// `Q^2` is the only registered variety of Picard rank two.
    pub fn picard_rank(&self) -> usize {
        if self.kind == VarietyKind::Quadric && self.dim == 2 {
            2
        } else {
            1
        }
    }

    /// Degree of the top self-intersection of the hyperplane class:
    /// `h^n = 1` on `P^n` and `h^n = 2` on `Q^n`.
    pub fn hyperplane_degree(&self) -> i64 {
        match self.kind {
            VarietyKind::ProjSpace => 1,
            VarietyKind::Quadric => 2,
        }
    }

    /// The anticanonical class `-K`: `n+1` on `P^n`, `n` on `Q^n` (n >= 3),
    /// `(2,2)` on `Q^2`.
    pub fn anticanonical_class(&self) -> PicClass {
        match (self.kind, self.picard_rank()) {
            (VarietyKind::ProjSpace, _) => PicClass::scalar(self.dim as i64 + 1),
            (VarietyKind::Quadric, 1) => PicClass::scalar(self.dim as i64),
            (VarietyKind::Quadric, _) => PicClass::pair(2, 2),
        }
    }

    pub fn canonical_class(&self) -> PicClass {
        self.anticanonical_class().neg()
    }

    /// Checks that `t` has the right number of coordinates for this variety.
    pub fn check_class(&self, t: &PicClass) -> Result<()> {
        if t.rank() != self.picard_rank() {
            return Err(Error::PicardRankMismatch {
                variety: self.to_string(),
                expected: self.picard_rank(),
                got: t.rank(),
            });
        }
        Ok(())
    }

    /// Dimensions `(h^0, ..., h^n)` of the cohomology of `O(t)`.
    pub fn line_cohomology(&self, t: &PicClass) -> Result<Vec<i64>> {
        self.check_class(t)?;
        let n = self.dim as usize;
        match (self.kind, self.picard_rank()) {
            (VarietyKind::ProjSpace, _) => Ok(proj_space_cohomology(n, t.coords[0])),
            (VarietyKind::Quadric, 1) => {
                // Restriction from P^{n+1}: two-term bookkeeping, the ambient
                // space only has cohomology in degrees 0 and n+1.
                let k = t.coords[0];
                let ambient = |tw: i64| proj_space_cohomology(n + 1, tw);
                let amb_k = ambient(k);
                let amb_k2 = ambient(k - 2);
                let mut out = vec![0i64; n + 1];
                out[0] = amb_k[0] - amb_k2[0];
                out[n] = amb_k2[n + 1] - amb_k[n + 1];
                debug_assert!(out[0] >= 0 && out[n] >= 0);
                Ok(out)
            }
            (VarietyKind::Quadric, _) => {
                // Kuenneth product of two projective lines.
                let fa = proj_space_cohomology(1, t.coords[0]);
                let fb = proj_space_cohomology(1, t.coords[1]);
                let mut out = vec![0i64; 3];
                for i in 0..2 {
                    for j in 0..2 {
                        out[i + j] += fa[i] * fb[j];
                    }
                }
                Ok(out)
            }
        }
    }

    /// `h^0(O(t))`, the most used entry of [`Variety::line_cohomology`].
    pub fn line_sections(&self, t: &PicClass) -> Result<i64> {
        Ok(self.line_cohomology(t)?[0])
    }

    /// Euler characteristic of `O(t)` (alternating sum of the exact dimensions).
    pub fn line_euler_char(&self, t: &PicClass) -> Result<i64> {
        let h = self.line_cohomology(t)?;
        Ok(h.iter()
            .enumerate()
            .map(|(q, d)| if q % 2 == 0 { *d } else { -*d })
            .sum())
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarietyKind::ProjSpace => write!(f, "P{}", self.dim),
            VarietyKind::Quadric => write!(f, "Q{}", self.dim),
        }
    }
}

impl Serialize for Variety {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Variety {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Variety::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// An element of the Picard lattice: one integer on `P^n` and `Q^n` (n >= 3),
/// a pair on `Q^2`. Addition and negation are componentwise; effectivity is
/// `>= 0` componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PicClass {
    coords: Vec<i64>,
}

impl PicClass {
    pub fn scalar(k: i64) -> Self {
        PicClass { coords: vec![k] }
    }

    pub fn pair(a: i64, b: i64) -> Self {
        PicClass { coords: vec![a, b] }
    }

    pub fn zero(rank: usize) -> Self {
        PicClass {
            coords: vec![0; rank],
        }
    }

    /// Diagonal embedding `O(k) -> (k,...,k)`; the identity on rank one.
    pub fn diagonal(k: i64, rank: usize) -> Self {
        PicClass {
            coords: vec![k; rank],
        }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// The single coordinate of a rank-one class.
    pub fn as_scalar(&self) -> Result<i64> {
        if self.coords.len() == 1 {
            Ok(self.coords[0])
        } else {
            Err(Error::InvalidInput(format!(
                "expected a rank-one Picard class, got {self}"
            )))
        }
    }

    pub fn add(&self, other: &PicClass) -> PicClass {
        assert_eq!(self.rank(), other.rank(), "Picard rank mismatch");
        PicClass {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &PicClass) -> PicClass {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PicClass {
        PicClass {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> PicClass {
        PicClass {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|a| *a == 0)
    }

    /// Componentwise `>= 0`; effectivity on the registered varieties.
    pub fn is_effective(&self) -> bool {
        self.coords.iter().all(|a| *a >= 0)
    }

    pub fn min_coord(&self) -> i64 {
        *self.coords.iter().min().expect("nonempty")
    }

    /// Intersection number of two divisor classes on a surface:
    /// `x.y * deg(h^2)` on `P^2`, `a b' + a' b` on `Q^2`.
    pub fn surface_pairing(&self, other: &PicClass, v: &Variety) -> Result<i64> {
        v.check_class(self)?;
        v.check_class(other)?;
        if !v.is_surface() {
            return Err(Error::NotASurface(v.to_string()));
        }
        if v.picard_rank() == 1 {
            Ok(self.coords[0] * other.coords[0] * v.hyperplane_degree())
        } else {
            Ok(self.coords[0] * other.coords[1] + self.coords[1] * other.coords[0])
        }
    }

    /// Parses `"3"` or `"1,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let coords: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|p| p.trim().parse::<i64>()).collect();
        let coords = coords
            .map_err(|_| Error::InvalidInput(format!("cannot parse Picard class `{s}`")))?;
        if coords.is_empty() || coords.len() > 2 {
            return Err(Error::InvalidInput(format!(
                "a Picard class has one or two coordinates, got `{s}`"
            )));
        }
        Ok(PicClass { coords })
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            write!(f, "(")?;
            for (i, c) in self.coords.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")
        }
    }
}

/// Chern data of a bundle: rank, first Chern class, and (on surfaces, or when
/// a K-class check wants it) the second Chern class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernData {
    pub rank: i64,
    pub c1: PicClass,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c2: Option<i64>,
}

impl ChernData {
    pub fn new(rank: i64, c1: PicClass) -> Self {
        ChernData { rank, c1, c2: None }
    }

    pub fn with_c2(rank: i64, c1: PicClass, c2: i64) -> Self {
        ChernData {
            rank,
            c1,
            c2: Some(c2),
        }
    }
}

/// Riemann-Roch on the two surfaces.
///
/// `P^2`: `chi(E) = r + d(d+3)/2 - c2`.
/// `Q^2`: `chi(E) = a b - c2 + a + b + r` for `c1 = (a, b)`.
pub fn euler_char_surface(v: &Variety, cd: &ChernData) -> Result<i64> {
    if !v.is_surface() {
        return Err(Error::NotASurface(v.to_string()));
    }
    v.check_class(&cd.c1)?;
    let c2 = cd.c2.ok_or(Error::MissingC2)?;
    match v.kind() {
        VarietyKind::ProjSpace => {
            let d = cd.c1.coords()[0];
            Ok(cd.rank + d * (d + 3) / 2 - c2)
        }
        VarietyKind::Quadric => {
            let (a, b) = (cd.c1.coords()[0], cd.c1.coords()[1]);
            Ok(a * b - c2 + a + b + cd.rank)
        }
    }
}

/// Full Chern vector `c_1, ..., c_n` of a bundle on an `n`-dimensional host.
///
/// `c1` lives in the Picard lattice; `higher[i]` is `c_{i+2}` expressed as an
/// integer multiple of `h^{i+2}` on Picard-rank-one hosts, and as a multiple
/// of the point class on `Q^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernClasses {
    pub c1: PicClass,
    pub higher: Vec<i64>,
}

impl ChernClasses {
    pub fn surface(c1: PicClass, c2: i64) -> Self {
        ChernClasses {
            c1,
            higher: vec![c2],
        }
    }
}

/// Degree of the top Segre class `s_n(E)`, which equals the self-intersection
/// number `H(E)^{n+r-1}` of the tautological class on the projectivization.
///
/// Computed by formally inverting `1 - c_1 + c_2 - ... ` (the total Chern
/// polynomial of the dual) truncated in degree `n`, then taking degrees. On
/// surfaces this is the familiar `c_1^2 - c_2`.
pub fn segre_top(v: &Variety, cc: &ChernClasses) -> Result<i64> {
    v.check_class(&cc.c1)?;
    let n = v.dim() as usize;
    if cc.higher.len() != n.saturating_sub(1) {
        return Err(Error::InvalidInput(format!(
            "need Chern classes up to degree {n}, got c1 plus {} higher classes",
            cc.higher.len()
        )));
    }

    if v.picard_rank() == 2 {
        // Only the surface case has a rank-two lattice; expand by hand.
        let c1 = &cc.c1;
        let c2 = cc.higher[0];
        let c1sq = c1.surface_pairing(c1, v)?;
        return Ok(c1sq - c2);
    }

    // gamma[i] = (-1)^i c_i as a multiple of h^i; s satisfies s * (1 + gamma) = 1.
    let mut gamma = vec![0i64; n + 1];
    gamma[1] = -cc.c1.coords()[0];
    for (i, c) in cc.higher.iter().enumerate() {
        let deg = i + 2;
        gamma[deg] = if deg % 2 == 0 { *c } else { -*c };
    }
    let mut s = vec![0i64; n + 1];
    s[0] = 1;
    for k in 1..=n {
        let mut acc: i64 = 0;
        for i in 1..=k {
            acc = acc
                .checked_add(gamma[i].checked_mul(s[k - i]).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
        }
        s[k] = -acc;
    }
    Ok(s[n] * v.hyperplane_degree())
}

fn proj_space_cohomology(n: usize, k: i64) -> Vec<i64> {
    let mut out = vec![0i64; n + 1];
    let nn = n as i64;
    if k >= 0 {
        out[0] = binom(nn + k, nn);
    }
    if k <= -nn - 1 {
        out[n] = binom(-k - 1, nn);
    }
    out
}

/// Binomial coefficient for `0 <= bot <= top`, exact at every step.
pub(crate) fn binom(top: i64, bot: i64) -> i64 {
    debug_assert!(bot >= 0 && top >= bot, "binom({top}, {bot})");
    let bot = bot.min(top - bot);
    let mut r: i64 = 1;
    for i in 1..=bot {
        r = r
            .checked_mul(top - bot + i)
            .expect("binomial overflow")
            / i;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u32) -> Variety {
        Variety::proj_space(n).unwrap()
    }
    fn q(n: u32) -> Variety {
        Variety::quadric(n).unwrap()
    }

    #[test]
    fn parse_grammar() {
        assert_eq!(Variety::parse("P3").unwrap(), p(3));
        assert_eq!(Variety::parse("Q4").unwrap(), q(4));
        assert!(Variety::parse("P0").is_err());
        assert!(Variety::parse("Q1").is_err());
        assert!(Variety::parse("X3").is_err());
        assert!(Variety::parse("Q").is_err());
    }

    #[test]
    fn structure_sheaf_on_p2() {
        let h = p(2).line_cohomology(&PicClass::scalar(0)).unwrap();
        assert_eq!(h, vec![1, 0, 0]);
    }

    #[test]
    fn q3_sections_of_o1() {
        // h^0(P^4, O(1)) - h^0(P^4, O(-1)) = 5 - 0
        let h = q(3).line_cohomology(&PicClass::scalar(1)).unwrap();
        assert_eq!(h, vec![5, 0, 0, 0]);
    }

    #[test]
    fn q2_mixed_twist_vanishes() {
        // Kuenneth with h^*(P^1, O(-1)) = (0, 0)
        let h = q(2).line_cohomology(&PicClass::pair(-1, 1)).unwrap();
        assert_eq!(h, vec![0, 0, 0]);
    }

    #[test]
    fn q2_canonical_cohomology() {
        let h = q(2).line_cohomology(&PicClass::pair(-2, -2)).unwrap();
        assert_eq!(h, vec![0, 0, 1]);
    }

    #[test]
    fn rank_mismatch_rejected() {
        assert!(q(2).line_cohomology(&PicClass::scalar(1)).is_err());
        assert!(p(3).line_cohomology(&PicClass::pair(1, 1)).is_err());
    }

    #[test]
    fn euler_char_examples() {
        // h^0(E) = chi(E) = r + 5 - c2 at d = 2 on P^2
        let cd = ChernData::with_c2(2, PicClass::scalar(2), 4);
        assert_eq!(euler_char_surface(&p(2), &cd).unwrap(), 3);
        // r + 3 - c2 at (1,1) on Q^2
        let cd = ChernData::with_c2(2, PicClass::pair(1, 1), 2);
        assert_eq!(euler_char_surface(&q(2), &cd).unwrap(), 3);
        let cd = ChernData::with_c2(1, PicClass::scalar(0), 0);
        assert_eq!(euler_char_surface(&p(2), &cd).unwrap(), 1);
        assert!(euler_char_surface(&p(3), &ChernData::new(1, PicClass::scalar(0))).is_err());
        assert!(
            euler_char_surface(&p(2), &ChernData::new(1, PicClass::scalar(0))).is_err(),
            "missing c2"
        );
    }

    #[test]
    fn segre_surface_boundary() {
        let cc = ChernClasses::surface(PicClass::scalar(2), 4);
        assert_eq!(segre_top(&p(2), &cc).unwrap(), 0);
        let cc = ChernClasses::surface(PicClass::scalar(0), 0);
        assert_eq!(segre_top(&p(2), &cc).unwrap(), 0);
    }

    #[test]
    fn segre_p3_by_hand() {
        // Oracle: expand 1/(1 - c1 + c2 - c3) by hand; the degree-3 part is
        // c1^3 - 2 c1 c2 + c3, so (1,1,0) gives 1 - 2 + 0 = -1.
        let cc = ChernClasses {
            c1: PicClass::scalar(1),
            higher: vec![1, 0],
        };
        assert_eq!(segre_top(&p(3), &cc).unwrap(), -1);
        // Missing degrees rejected.
        let cc = ChernClasses {
            c1: PicClass::scalar(1),
            higher: vec![1],
        };
        assert!(segre_top(&p(3), &cc).is_err());
    }

    #[test]
    fn segre_q2_pairing() {
        // 2ab - c2 on the quadric surface
        let cc = ChernClasses::surface(PicClass::pair(1, 1), 2);
        assert_eq!(segre_top(&q(2), &cc).unwrap(), 0);
        let cc = ChernClasses::surface(PicClass::pair(2, 1), 1);
        assert_eq!(segre_top(&q(2), &cc).unwrap(), 3);
    }

    #[test]
    fn anticanonical_values() {
        assert_eq!(p(3).anticanonical_class(), PicClass::scalar(4));
        assert_eq!(q(4).anticanonical_class(), PicClass::scalar(4));
        assert_eq!(q(2).anticanonical_class(), PicClass::pair(2, 2));
    }

    #[test]
    fn serre_duality_all_registered() {
        // h^q(t) = h^{n-q}(K - t) entrywise.
        let scalar_hosts = [p(1), p(2), p(3), p(4), q(3), q(4), q(5)];
        for v in scalar_hosts {
            let k = v.canonical_class();
            for t in -10..=10 {
                let t = PicClass::scalar(t);
                let lhs = v.line_cohomology(&t).unwrap();
                let rhs = v.line_cohomology(&k.sub(&t)).unwrap();
                let flipped: Vec<i64> = rhs.iter().rev().copied().collect();
                assert_eq!(lhs, flipped, "{v} twist {t}");
            }
        }
        let v = q(2);
        let k = v.canonical_class();
        for a in -6..=6 {
            for b in -6..=6 {
                let t = PicClass::pair(a, b);
                let lhs = v.line_cohomology(&t).unwrap();
                let rhs = v.line_cohomology(&k.sub(&t)).unwrap();
                let flipped: Vec<i64> = rhs.iter().rev().copied().collect();
                assert_eq!(lhs, flipped, "Q2 twist {t}");
            }
        }
    }

    #[test]
    fn quadric_intermediate_vanishing() {
        for n in [3u32, 4, 5, 6] {
            let v = q(n);
            let bound = 2 * n as i64;
            for t in -bound..=bound {
                let h = v.line_cohomology(&PicClass::scalar(t)).unwrap();
                for (deg, item) in h.iter().enumerate().take(n as usize).skip(1) {
                    assert_eq!(*item, 0, "Q{n}, twist {t}, degree {deg}");
                }
            }
        }
    }

    #[test]
    fn euler_char_matches_line_cohomology_on_p2() {
        let v = p(2);
        for t in -10..=10 {
            let chi = v.line_euler_char(&PicClass::scalar(t)).unwrap();
            let cd = ChernData::with_c2(1, PicClass::scalar(t), 0);
            assert_eq!(chi, euler_char_surface(&v, &cd).unwrap(), "twist {t}");
        }
    }

    proptest! {
        #[test]
        fn segre_equals_c1sq_minus_c2_on_surfaces(c1 in -8i64..=8, c2 in -30i64..=30) {
            let v = p(2);
            let cc = ChernClasses::surface(PicClass::scalar(c1), c2);
            prop_assert_eq!(segre_top(&v, &cc).unwrap(), c1 * c1 - c2);
        }

        #[test]
        fn segre_equals_pairing_minus_c2_on_q2(a in -8i64..=8, b in -8i64..=8, c2 in -30i64..=30) {
            let v = q(2);
            let cc = ChernClasses::surface(PicClass::pair(a, b), c2);
            prop_assert_eq!(segre_top(&v, &cc).unwrap(), 2 * a * b - c2);
        }
    }
}
