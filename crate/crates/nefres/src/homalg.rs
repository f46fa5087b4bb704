//! Dimension-level module theory over the endomorphism algebra of an
//! exceptional collection.
//!
//! A finitely generated right module over the algebra `A = End(G_0 + ... +
//! G_m)` is tracked here only through its dimension vector `(dim V^0, ...,
//! dim V^m)`. The canonical surjection from a projective cover has kernel
//! with dimensions
//!
//! ```text
//! W_i = sum_{i < j <= d(V)} v_j * h[i][j],      d(V) = max { j : v_j != 0 },
//! ```
//!
//! and iterating this yields the exponent table `e_{l,j}` of the standard
//! locally free resolution: `e_{l,j} = sum_{k > j} e_{l-1,k} * h[j][k]`. The
//! table is stored dense, `(m+1) x (m+1)` with the structural zeros explicit,
//! so the staircase rule (a row vanishing beyond column `j` forces the next
//! row to vanish beyond column `j-1`) can be asserted directly.
//!
//! [`reduce_no_trivial_quotient`] performs the head reduction available when
//! the resolved object has no `G_0` quotient: `e_{0,0}` drops to zero and
//! `e_{1,0}` drops by the same amount. [`verify_table`] / [`verify_terms`]
//! run the K-class bookkeeping (rank, determinant, and on surfaces the Euler
//! characteristic) of an alternating sum of terms against a target — a
//! necessary condition for any claimed resolution, and the workhorse behind
//! the classification checks.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use crate::collections::{Bundle, ExceptionalCollection};
use crate::error::{Error, Result};
use crate::geometry::{euler_char_surface, ChernData, PicClass, Variety};

/// Dimension vector of a right module over the collection's algebra;
/// entry `i` is `dim V e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector {
    dims: Vec<i64>,
}

impl DimVector {
    pub fn new(dims: Vec<i64>) -> Result<Self> {
        if dims.iter().any(|d| *d < 0) {
            return Err(Error::InvalidInput(
                "dimension vectors have nonnegative entries".into(),
            ));
        }
        Ok(DimVector { dims })
    }

    pub fn zero(len: usize) -> Self {
        DimVector {
            dims: vec![0; len],
        }
    }

    pub fn dims(&self) -> &[i64] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|d| *d == 0)
    }

    /// `d(V)`: the largest index with a nonzero entry.
    pub fn top_support(&self) -> Option<usize> {
        self.dims.iter().rposition(|d| *d != 0)
    }
}

fn checked_mul_add(acc: i64, a: i64, b: i64) -> Result<i64> {
    acc.checked_add(a.checked_mul(b).ok_or(Error::Overflow)?)
        .ok_or(Error::Overflow)
}

/// Dimension vector of the kernel of the canonical projective cover.
pub fn kernel_dims(c: &ExceptionalCollection, v: &DimVector) -> Result<DimVector> {
    if v.len() != c.len() {
        return Err(Error::LengthMismatch {
            expected: c.len(),
            got: v.len(),
        });
    }
    let mut w = vec![0i64; c.len()];
    if let Some(top) = v.top_support() {
        for (i, wi) in w.iter_mut().enumerate() {
            for j in (i + 1)..=top {
                *wi = checked_mul_add(*wi, v.dims()[j], c.hom_dim(i, j)?)?;
            }
        }
    }
    DimVector::new(w)
}

/// The exponent table of a standard resolution: row `0` is the input head
/// vector, and row `l` is produced from row `l-1` by the kernel recursion.
/// Dense `(m+1) x (m+1)`; structural zeros (entries with `j > m - l`) come
/// out of the recursion on their own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentTable {
    collection: ExceptionalCollection,
    rows: Vec<Vec<i64>>,
    dmin: Option<PicClass>,
}

impl ExponentTable {
    /// Builds a table from explicit rows (shorter rows are padded with
    /// zeros). Entries must be nonnegative and at most `m+1` rows are
    /// accepted.
    pub fn from_rows(
        collection: ExceptionalCollection,
        rows: Vec<Vec<i64>>,
        dmin: Option<PicClass>,
    ) -> Result<Self> {
        let width = collection.len();
        if rows.is_empty() || rows.len() > width {
            return Err(Error::InvalidInput(format!(
                "a table over this collection has between 1 and {width} rows"
            )));
        }
        let mut padded = Vec::with_capacity(width);
        for row in &rows {
            if row.len() > width {
                return Err(Error::InvalidInput(format!(
                    "row of length {} exceeds collection size {width}",
                    row.len()
                )));
            }
            if row.iter().any(|e| *e < 0) {
                return Err(Error::InvalidInput(
                    "exponent tables have nonnegative entries".into(),
                ));
            }
            let mut r = row.clone();
            r.resize(width, 0);
            padded.push(r);
        }
        padded.resize(width, vec![0; width]);
        Ok(ExponentTable {
            collection,
            rows: padded,
            dmin,
        })
    }

    pub fn collection(&self) -> &ExceptionalCollection {
        &self.collection
    }

    /// Number of rows and columns, `m + 1`.
    pub fn size(&self) -> usize {
        self.collection.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, l: usize, j: usize) -> i64 {
        self.rows[l][j]
    }

    pub fn dmin(&self) -> Option<&PicClass> {
        self.dmin.as_ref()
    }

    pub fn set_dmin(&mut self, dmin: Option<PicClass>) {
        self.dmin = dmin;
    }

    /// First violation of the staircase rule, if any: a row vanishing beyond
    /// column `j` must force the next row to vanish beyond `j - 1`.
    pub fn staircase_violation(&self) -> Option<(usize, usize)> {
        for l in 0..self.rows.len() - 1 {
            // smallest j such that e_{l,k} = 0 for all k > j
            let j = self.rows[l].iter().rposition(|e| *e != 0);
            let threshold = match j {
                None => 0,                  // zero row: next row must vanish entirely
                Some(j) if j == 0 => 0,     // only the head survives
                Some(j) => j,               // next row must vanish beyond j - 1
            };
            if let Some(k) = self.rows[l + 1].iter().rposition(|e| *e != 0) {
                if k + 1 > threshold {
                    return Some((l + 1, k));
                }
            }
        }
        None
    }

    /// Signed K-class terms `(-1)^l G_j^{e_{l,j}}` of the table.
    pub fn signed_terms(&self) -> Vec<SignedTerm> {
        let mut terms = Vec::new();
        for (l, row) in self.rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if *e != 0 {
                    terms.push(SignedTerm {
                        bundle: self.collection.generator(j).clone(),
                        mult: *e,
                        positive: l % 2 == 0,
                    });
                }
            }
        }
        terms
    }
}

impl Serialize for ExponentTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExponentTable", 3)?;
        st.serialize_field("variety", self.collection.variety())?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("dmin", &self.dmin)?;
        st.end()
    }
}

/// Runs the exponent recursion from a head vector. Termination after at most
/// `m + 1` rows is structural: row `l` is supported in columns `<= m - l`.
pub fn resolution_exponents(c: &ExceptionalCollection, e0: &DimVector) -> Result<ExponentTable> {
    if e0.len() != c.len() {
        return Err(Error::LengthMismatch {
            expected: c.len(),
            got: e0.len(),
        });
    }
    let width = c.len();
    let mut rows = vec![e0.dims().to_vec()];
    for l in 1..width {
        let prev = &rows[l - 1];
        let mut row = vec![0i64; width];
        for (j, rj) in row.iter_mut().enumerate() {
            for k in (j + 1)..width {
                *rj = checked_mul_add(*rj, prev[k], c.hom_dim(j, k)?)?;
            }
        }
        rows.push(row);
    }
    Ok(ExponentTable {
        collection: c.clone(),
        rows,
        dmin: None,
    })
}

/// Head reduction: when the resolved object admits no `G_0` quotient, the
/// `G_0` head splits off against the first syzygy, replacing `e_{0,0}` by
/// zero and `e_{1,0}` by `e_{1,0} - e_{0,0}`. Requires `e_{1,0} >= e_{0,0}`;
/// failure of that inequality means the hypothesis does not hold for the
/// input.
pub fn reduce_no_trivial_quotient(t: &ExponentTable) -> Result<ExponentTable> {
    let e00 = t.entry(0, 0);
    let e10 = t.entry(1, 0);
    if e10 < e00 {
        return Err(Error::HeadReduction { e10, e00 });
    }
    let mut out = t.clone();
    out.rows[0][0] = 0;
    out.rows[1][0] = e10 - e00;
    Ok(out)
}

/// One K-class term: `bundle^{mult}` counted positively or negatively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedTerm {
    pub bundle: Bundle,
    pub mult: i64,
    pub positive: bool,
}

impl SignedTerm {
    pub fn plus(bundle: Bundle, mult: i64) -> Self {
        SignedTerm {
            bundle,
            mult,
            positive: true,
        }
    }

    pub fn minus(bundle: Bundle, mult: i64) -> Self {
        SignedTerm {
            bundle,
            mult,
            positive: false,
        }
    }

    fn signed_mult(&self) -> i64 {
        if self.positive {
            self.mult
        } else {
            -self.mult
        }
    }
}

/// One side-by-side equality check of a K-class invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check<T> {
    pub lhs: T,
    pub rhs: T,
    pub ok: bool,
}

impl<T: PartialEq> Check<T> {
    fn new(lhs: T, rhs: T) -> Self {
        let ok = lhs == rhs;
        Check { lhs, rhs, ok }
    }
}

/// Outcome of the K-class verification: rank and determinant always, Euler
/// characteristic on surfaces whenever the target's `c2` pins it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub rank: Check<i64>,
    pub det: Check<PicClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<Check<i64>>,
    pub ok: bool,
}

/// Verifies a signed term list against a target Chern datum.
pub fn verify_terms(
    v: &Variety,
    terms: &[SignedTerm],
    target: &ChernData,
) -> Result<VerifyReport> {
    v.check_class(&target.c1)?;
    let mut rank: i64 = 0;
    let mut det = PicClass::zero(v.picard_rank());
    for t in terms {
        if t.bundle.host() != v {
            return Err(Error::InvalidInput(
                "term on a different variety than the target".into(),
            ));
        }
        if t.mult < 0 {
            return Err(Error::InvalidInput(
                "term multiplicities are nonnegative; use the sign for direction".into(),
            ));
        }
        let m = t.signed_mult();
        rank = rank
            .checked_add(m.checked_mul(t.bundle.rank()).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
        det = det.add(&t.bundle.det().scale(m));
    }
    let rank_check = Check::new(rank, target.rank);
    let det_check = Check::new(det, target.c1.clone());
    let chi_check = if v.is_surface() && target.c2.is_some() {
        let mut chi: i64 = 0;
        for t in terms {
            chi = checked_mul_add(chi, t.signed_mult(), t.bundle.euler_char()?)?;
        }
        Some(Check::new(chi, euler_char_surface(v, target)?))
    } else {
        None
    };
    let ok = rank_check.ok && det_check.ok && chi_check.as_ref().map_or(true, |c| c.ok);
    Ok(VerifyReport {
        rank: rank_check,
        det: det_check,
        chi: chi_check,
        ok,
    })
}

/// Verifies the alternating sum of an exponent table against a target.
pub fn verify_table(t: &ExponentTable, target: &ChernData) -> Result<VerifyReport> {
    verify_terms(t.collection.variety(), &t.signed_terms(), target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Variety;
    use proptest::prelude::*;

    fn p(n: u32) -> Variety {
        Variety::proj_space(n).unwrap()
    }
    fn q(n: u32) -> Variety {
        Variety::quadric(n).unwrap()
    }
    fn coll(v: &Variety) -> ExceptionalCollection {
        ExceptionalCollection::standard(v).unwrap()
    }
    fn dv(d: &[i64]) -> DimVector {
        DimVector::new(d.to_vec()).unwrap()
    }

    /// Independent brute-force oracle for the kernel dimensions.
    fn kernel_oracle(c: &ExceptionalCollection, v: &[i64]) -> Vec<i64> {
        let m1 = c.len();
        let mut w = vec![0i64; m1];
        for i in 0..m1 {
            for j in 0..m1 {
                if j > i {
                    w[i] += v[j] * c.hom_dim(i, j).unwrap();
                }
            }
        }
        w
    }

    #[test]
    fn kernel_q2_example() {
        let c = coll(&q(2));
        let w = kernel_dims(&c, &dv(&[4, 2, 2, 1])).unwrap();
        assert_eq!(w.dims(), &[12, 2, 2, 0]);
    }

    #[test]
    fn kernel_zero() {
        let c = coll(&q(3));
        let w = kernel_dims(&c, &DimVector::zero(4)).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn kernel_p2_top_generator() {
        // Brute-force oracle: W_0 = h[0][2] = 6, W_1 = h[1][2] = 3.
        let c = coll(&p(2));
        assert_eq!(kernel_oracle(&c, &[0, 0, 1]), vec![6, 3, 0]);
        let w = kernel_dims(&c, &dv(&[0, 0, 1])).unwrap();
        assert_eq!(w.dims(), &[6, 3, 0]);
    }

    #[test]
    fn kernel_length_mismatch() {
        let c = coll(&p(2));
        assert!(kernel_dims(&c, &dv(&[1, 2])).is_err());
    }

    #[test]
    fn resolution_q2_example() {
        let c = coll(&q(2));
        let t = resolution_exponents(&c, &dv(&[4, 2, 2, 1])).unwrap();
        assert_eq!(t.rows()[0], vec![4, 2, 2, 1]);
        assert_eq!(t.rows()[1], vec![12, 2, 2, 0]);
        assert_eq!(t.rows()[2], vec![8, 0, 0, 0]);
        assert_eq!(t.rows()[3], vec![0, 0, 0, 0]);
    }

    #[test]
    fn resolution_q3_spinor_slot_multiples() {
        // Head concentrated in the O(1) slot: the first syzygy picks up
        // 2^{s+1} e spinors and the second 2^{n+1} e heads.
        let e = 3i64;
        let c = coll(&q(3));
        let t = resolution_exponents(&c, &dv(&[0, 0, e, 0])).unwrap();
        assert_eq!(t.entry(1, 1), 4 * e);
        assert_eq!(t.entry(2, 0), 16 * e);
    }

    #[test]
    fn resolution_zero_head() {
        let c = coll(&p(3));
        let t = resolution_exponents(&c, &DimVector::zero(4)).unwrap();
        assert!(t.rows().iter().all(|r| r.iter().all(|e| *e == 0)));
    }

    #[test]
    fn reduce_examples() {
        let c = coll(&q(3));
        // Head vector of the odd-quadric system at r = 2, e = 3: the head
        // count h^0(E(1)) = 14 cancels against the first syzygy, leaving 49.
        let t = resolution_exponents(&c, &dv(&[14, 12, 3, 0])).unwrap();
        assert_eq!(t.entry(1, 0), 63);
        let r = reduce_no_trivial_quotient(&t).unwrap();
        assert_eq!(r.entry(0, 0), 0);
        assert_eq!(r.entry(1, 0), 49);

        // e_{0,0} = 0 is the identity.
        let t = resolution_exponents(&c, &dv(&[0, 1, 1, 0])).unwrap();
        assert_eq!(reduce_no_trivial_quotient(&t).unwrap(), t);

        // Equal entries cancel to a zero head; staircase still holds.
        let t = ExponentTable::from_rows(
            coll(&p(2)),
            vec![vec![2, 1, 0], vec![2, 0, 0]],
            None,
        )
        .unwrap();
        let r = reduce_no_trivial_quotient(&t).unwrap();
        assert_eq!(r.entry(1, 0), 0);
        assert_eq!(r.staircase_violation(), None);

        // Hypothesis failure is an input error.
        let t = ExponentTable::from_rows(
            coll(&p(2)),
            vec![vec![3, 1, 0], vec![2, 0, 0]],
            None,
        )
        .unwrap();
        assert!(reduce_no_trivial_quotient(&t).is_err());
    }

    #[test]
    fn verify_kernel_form_on_q3() {
        // rank 3 - 1 = 2, det 0 - (-1) = 1
        let v = q(3);
        let terms = vec![
            SignedTerm::plus(Bundle::line(v, PicClass::scalar(0)).unwrap(), 3),
            SignedTerm::minus(Bundle::line(v, PicClass::scalar(-1)).unwrap(), 1),
        ];
        let report = verify_terms(&v, &terms, &ChernData::new(2, PicClass::scalar(1))).unwrap();
        assert!(report.ok, "{report:?}");
    }

    #[test]
    fn verify_four_term_chain_on_p3() {
        // O^{r+3} - O(-1)^4 + O(-2): rank r, det 2
        let v = p(3);
        let r = 5i64;
        let terms = vec![
            SignedTerm::plus(Bundle::line(v, PicClass::scalar(0)).unwrap(), r + 3),
            SignedTerm::minus(Bundle::line(v, PicClass::scalar(-1)).unwrap(), 4),
            SignedTerm::plus(Bundle::line(v, PicClass::scalar(-2)).unwrap(), 1),
        ];
        let report = verify_terms(&v, &terms, &ChernData::new(r, PicClass::scalar(2))).unwrap();
        assert!(report.ok, "{report:?}");
    }

    #[test]
    fn verify_trivial_bundle() {
        let v = p(2);
        let terms = vec![SignedTerm::plus(
            Bundle::line(v, PicClass::scalar(0)).unwrap(),
            4,
        )];
        let target = ChernData::with_c2(4, PicClass::scalar(0), 0);
        assert!(verify_terms(&v, &terms, &target).unwrap().ok);
    }

    #[test]
    fn verify_full_resolution_of_top_generator_q2() {
        // Resolving O(1,1) by its own column of the hom matrix; the Euler
        // characteristic check pins c2 = 0.
        let c = coll(&q(2));
        let e0: Vec<i64> = (0..4).map(|j| c.hom_dim(j, 3).unwrap()).collect();
        assert_eq!(e0, vec![4, 2, 2, 1]);
        let t = resolution_exponents(&c, &dv(&e0)).unwrap();
        let target = ChernData::with_c2(1, PicClass::pair(1, 1), 0);
        let report = verify_table(&t, &target).unwrap();
        assert!(report.ok, "{report:?}");
        assert_eq!(report.det.lhs, PicClass::pair(1, 1));
        assert_eq!(report.chi.as_ref().unwrap().lhs, 4);
    }

    #[test]
    fn verify_rejects_foreign_terms() {
        let v = p(2);
        let term = SignedTerm::plus(Bundle::line(p(3), PicClass::scalar(0)).unwrap(), 1);
        assert!(verify_terms(&v, &[term], &ChernData::new(1, PicClass::scalar(0))).is_err());
    }

    fn head_strategy(len: usize, max: i64) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(0..=max, len)
    }

    proptest! {
        /// The recursion and the kernel operator are two routes to the same
        /// numbers: row l+1 equals kernel_dims applied to row l.
        #[test]
        fn rows_match_iterated_kernels(e0 in head_strategy(4, 20)) {
            for v in [p(3), q(3), q(2)] {
                let c = coll(&v);
                let t = resolution_exponents(&c, &dv(&e0)).unwrap();
                for l in 0..t.size() - 1 {
                    let w = kernel_dims(&c, &dv(&t.rows()[l])).unwrap();
                    prop_assert_eq!(w.dims(), &t.rows()[l + 1][..]);
                }
            }
        }

        #[test]
        fn staircase_always_holds(e0 in head_strategy(6, 12)) {
            let c = coll(&q(4));
            let t = resolution_exponents(&c, &dv(&e0)).unwrap();
            prop_assert_eq!(t.staircase_violation(), None);
        }

        /// Head reduction does not change the K-class.
        #[test]
        fn reduction_preserves_kclass(e0 in head_strategy(4, 12)) {
            let v = q(2);
            let c = coll(&v);
            let t = resolution_exponents(&c, &dv(&e0)).unwrap();
            if t.entry(1, 0) >= t.entry(0, 0) {
                let target = ChernData::with_c2(0, PicClass::pair(0, 0), 0);
                let before = verify_table(&t, &target).unwrap();
                let after = verify_table(&reduce_no_trivial_quotient(&t).unwrap(), &target).unwrap();
                prop_assert_eq!(before.rank.lhs, after.rank.lhs);
                prop_assert_eq!(before.det.lhs, after.det.lhs);
                prop_assert_eq!(before.chi.unwrap().lhs, after.chi.unwrap().lhs);
            }
        }
    }
}
