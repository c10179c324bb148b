//! Pointwise exterior algebra over a 4-dimensional Lorentzian vector space.
//!
//! Everything here is expressed in a fixed g-orthonormal coframe
//! `{e^0, e^1, e^2, e^3}` with metric signature (−,+,+,+) and positive
//! volume form `vol = e^0 ∧ e^1 ∧ e^2 ∧ e^3`. The Hodge dual is fixed by
//! `Φ ∧ ⋆Ψ = ⟨Φ,Ψ⟩ vol`, so `⋆1 = vol` and `⋆⋆Φ = (−1)^(p+1) Φ` on
//! p-forms. These two statements pin every sign in the crate.
//!
//! Forms are stored densely on the strictly increasing multi-index basis,
//! so a p-form owns exactly C(4,p) coefficients. All operations are pure
//! and values are immutable after construction, which makes the whole
//! module trivially safe to share across threads.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Metric components in the orthonormal coframe, diag(−1,+1,+1,+1).
pub const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Number of stored components per degree: C(4,p).
pub const COMP_COUNT: [usize; 5] = [1, 4, 6, 4, 1];

/// Strictly increasing multi-indices for each degree, in lexicographic order.
/// This is the internal storage order of [`PForm`].
pub const BASIS_2: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
pub const BASIS_3: [(usize, usize, usize); 4] = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];

/// The fixed orthonormal frame: metric diag(−1,+1,+1,+1) and the
/// orientation statement that `e^0∧e^1∧e^2∧e^3` is the positive volume
/// form. Exists as a value type so the conventions have one written home.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frame;

impl Frame {
    /// Metric component η_aa.
    #[inline]
    pub fn eta(a: usize) -> f64 {
        ETA[a]
    }

    /// g(X, Y) = η_ab X^a Y^b.
    pub fn metric(x: &Vector4, y: &Vector4) -> f64 {
        (0..4).map(|a| ETA[a] * x.0[a] * y.0[a]).sum()
    }

    /// The positive unit volume 4-form.
    pub fn volume() -> PForm {
        PForm::from_components(4, &[1.0])
    }

    /// Coframe 1-form e^a.
    pub fn basis_one_form(a: usize) -> PForm {
        let mut comps = [0.0; 6];
        comps[a] = 1.0;
        PForm {
            degree: 1,
            comps,
            degenerate: false,
        }
    }

    /// Frame vector X_a (dual to e^a).
    pub fn basis_vector(a: usize) -> Vector4 {
        let mut c = [0.0; 4];
        c[a] = 1.0;
        Vector4(c)
    }
}

/// A tangent vector with components in the frame {X_a}.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vector4(pub [f64; 4]);

impl Vector4 {
    pub fn new(c: [f64; 4]) -> Self {
        Vector4(c)
    }

    pub fn zero() -> Self {
        Vector4([0.0; 4])
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Metric dual X̃ = g(X, −), a 1-form.
    pub fn metric_dual(&self) -> PForm {
        let mut comps = [0.0; 6];
        for a in 0..4 {
            comps[a] = ETA[a] * self.0[a];
        }
        PForm {
            degree: 1,
            comps,
            degenerate: false,
        }
    }
}

impl Add for Vector4 {
    type Output = Vector4;
    fn add(self, rhs: Vector4) -> Vector4 {
        let mut c = [0.0; 4];
        for a in 0..4 {
            c[a] = self.0[a] + rhs.0[a];
        }
        Vector4(c)
    }
}

impl Sub for Vector4 {
    type Output = Vector4;
    fn sub(self, rhs: Vector4) -> Vector4 {
        let mut c = [0.0; 4];
        for a in 0..4 {
            c[a] = self.0[a] - rhs.0[a];
        }
        Vector4(c)
    }
}

impl Mul<f64> for Vector4 {
    type Output = Vector4;
    fn mul(self, s: f64) -> Vector4 {
        let mut c = self.0;
        for v in &mut c {
            *v *= s;
        }
        Vector4(c)
    }
}

impl Neg for Vector4 {
    type Output = Vector4;
    fn neg(self) -> Vector4 {
        self * -1.0
    }
}

/// Metric dual of a 1-form: the vector α̃ = g⁻¹(α, −).
///
/// Round trip with [`Vector4::metric_dual`] is the identity.
pub fn metric_dual_form(alpha: &PForm) -> Vector4 {
    assert_eq!(alpha.degree, 1, "metric dual of a form requires degree 1");
    let mut c = [0.0; 4];
    for a in 0..4 {
        c[a] = ETA[a] * alpha.comps[a]; // η⁻¹ = η for the orthonormal frame
    }
    Vector4(c)
}

/// An antisymmetric degree-p tensor, p ∈ 0..=4, with dense components on
/// the strictly increasing multi-index basis.
///
/// The `degenerate` flag marks the identically-zero result of a wedge
/// whose degree would exceed 4; the value is a zero 4-form and callers
/// asserting degrees must check the flag.
#[derive(Clone, Copy, PartialEq)]
pub struct PForm {
    degree: usize,
    comps: [f64; 6],
    degenerate: bool,
}

impl fmt::Debug for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PForm(deg {}, {:?}", self.degree, self.components())?;
        if self.degenerate {
            write!(f, ", degenerate")?;
        }
        write!(f, ")")
    }
}

/// Multi-index list for a degree, as index slices.
fn basis_lists(degree: usize) -> &'static [&'static [usize]] {
    const B0: [&[usize]; 1] = [&[]];
    const B1: [&[usize]; 4] = [&[0], &[1], &[2], &[3]];
    const B2: [&[usize]; 6] = [&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]];
    const B3: [&[usize]; 4] = [&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]];
    const B4: [&[usize]; 1] = [&[0, 1, 2, 3]];
    match degree {
        0 => &B0,
        1 => &B1,
        2 => &B2,
        3 => &B3,
        4 => &B4,
        _ => unreachable!("degree out of range"),
    }
}

/// Position of a strictly increasing multi-index in the storage order.
fn basis_position(degree: usize, idx: &[usize]) -> usize {
    basis_lists(degree)
        .iter()
        .position(|b| *b == idx)
        .expect("strictly increasing multi-index")
}

impl PForm {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= 4, "degree out of range");
        PForm {
            degree,
            comps: [0.0; 6],
            degenerate: false,
        }
    }

    pub fn scalar(value: f64) -> Self {
        let mut comps = [0.0; 6];
        comps[0] = value;
        PForm {
            degree: 0,
            comps,
            degenerate: false,
        }
    }

    /// Build from components in the internal (lexicographic) basis order.
    pub fn from_components(degree: usize, components: &[f64]) -> Self {
        assert!(degree <= 4, "degree out of range");
        assert_eq!(
            components.len(),
            COMP_COUNT[degree],
            "component count must be C(4,degree)"
        );
        let mut comps = [0.0; 6];
        comps[..components.len()].copy_from_slice(components);
        PForm {
            degree,
            comps,
            degenerate: false,
        }
    }

    /// Basis 2-form e^a∧e^b for any a ≠ b (signed if a > b).
    pub fn basis_two_form(a: usize, b: usize) -> Self {
        assert!(a < 4 && b < 4 && a != b);
        let mut f = PForm::zero(2);
        if a < b {
            f.comps[basis_position(2, &[a, b])] = 1.0;
        } else {
            f.comps[basis_position(2, &[b, a])] = -1.0;
        }
        f
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Components in the internal storage order (length C(4,p)).
    pub fn components(&self) -> &[f64] {
        &self.comps[..COMP_COUNT[self.degree]]
    }

    pub fn components_mut(&mut self) -> &mut [f64] {
        &mut self.comps[..COMP_COUNT[self.degree]]
    }

    /// Signed component lookup for an arbitrary (not necessarily sorted)
    /// multi-index; repeated indices give 0.
    pub fn component(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.degree);
        let mut sorted: Vec<usize> = idx.to_vec();
        let mut sign = 1.0;
        for i in 0..sorted.len() {
            for j in (i + 1)..sorted.len() {
                if sorted[i] == sorted[j] {
                    return 0.0;
                }
                if sorted[i] > sorted[j] {
                    sorted.swap(i, j);
                    sign = -sign;
                }
            }
        }
        sign * self.comps[basis_position(self.degree, &sorted)]
    }

    pub fn max_abs(&self) -> f64 {
        self.components().iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, s: f64) -> PForm {
        let mut out = *self;
        for c in out.components_mut() {
            *c *= s;
        }
        out
    }

    /// Exterior product. Degrees above 4 give the identically-zero result,
    /// represented as a zero 4-form with the degenerate flag set.
    pub fn wedge(&self, other: &PForm) -> PForm {
        let p = self.degree;
        let q = other.degree;
        if p + q > 4 {
            let mut out = PForm::zero(4);
            out.degenerate = true;
            return out;
        }
        let mut out = PForm::zero(p + q);
        let left = basis_lists(p);
        let right = basis_lists(q);
        for (i, li) in left.iter().enumerate() {
            let a = self.comps[i];
            if a == 0.0 {
                continue;
            }
            'outer: for (j, rj) in right.iter().enumerate() {
                let b = other.comps[j];
                if b == 0.0 {
                    continue;
                }
                // merge sign: count transpositions moving rj entries past li entries
                let mut swaps = 0usize;
                for &x in rj.iter() {
                    for &y in li.iter() {
                        if x == y {
                            continue 'outer;
                        }
                        if y > x {
                            swaps += 1;
                        }
                    }
                }
                let mut merged: Vec<usize> = li.iter().chain(rj.iter()).copied().collect();
                merged.sort_unstable();
                let sign = if swaps.is_multiple_of(2) { 1.0 } else { -1.0 };
                let pos = basis_position(p + q, &merged);
                out.comps[pos] += sign * a * b;
            }
        }
        out
    }

    /// Interior contraction i_X. On scalars the result is the zero 0-form.
    pub fn interior(&self, x: &Vector4) -> PForm {
        if self.degree == 0 {
            return PForm::zero(0);
        }
        let mut out = PForm::zero(self.degree - 1);
        let basis = basis_lists(self.degree);
        for (i, idx) in basis.iter().enumerate() {
            let c = self.comps[i];
            if c == 0.0 {
                continue;
            }
            for (k, &a) in idx.iter().enumerate() {
                let xa = x.0[a];
                if xa == 0.0 {
                    continue;
                }
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(m, _)| m != k)
                    .map(|(_, &v)| v)
                    .collect();
                let pos = basis_position(self.degree - 1, &rest);
                out.comps[pos] += sign * xa * c;
            }
        }
        out
    }

    /// Hodge dual with the convention Φ∧⋆Ψ = ⟨Φ,Ψ⟩ vol, vol = e^0∧e^1∧e^2∧e^3.
    pub fn hodge(&self) -> PForm {
        let p = self.degree;
        let mut out = PForm::zero(4 - p);
        let basis = basis_lists(p);
        for (i, idx) in basis.iter().enumerate() {
            let c = self.comps[i];
            if c == 0.0 {
                continue;
            }
            let comp: Vec<usize> = (0..4).filter(|a| !idx.contains(a)).collect();
            // metric norm ⟨e^I, e^I⟩ and the block permutation sign of (I, I^c)
            let mut metric = 1.0;
            for &a in idx.iter() {
                metric *= ETA[a];
            }
            let mut swaps = 0usize;
            for &x in comp.iter() {
                for &y in idx.iter() {
                    if y > x {
                        swaps += 1;
                    }
                }
            }
            let sign = if swaps.is_multiple_of(2) { 1.0 } else { -1.0 };
            let pos = basis_position(4 - p, &comp);
            out.comps[pos] += metric * sign * c;
        }
        out
    }

    /// Metric inner product ⟨Φ,Ψ⟩_η of two forms of equal degree.
    pub fn inner(&self, other: &PForm) -> f64 {
        assert_eq!(self.degree, other.degree, "inner product needs equal degrees");
        let basis = basis_lists(self.degree);
        let mut acc = 0.0;
        for (i, idx) in basis.iter().enumerate() {
            let mut metric = 1.0;
            for &a in idx.iter() {
                metric *= ETA[a];
            }
            acc += metric * self.comps[i] * other.comps[i];
        }
        acc
    }

    /// Components in the published 2-form order (01, 02, 03, 23, 31, 12).
    pub fn to_bivector6(&self) -> [f64; 6] {
        assert_eq!(self.degree, 2, "bivector components require degree 2");
        [
            self.comps[0],  // 01
            self.comps[1],  // 02
            self.comps[2],  // 03
            self.comps[5],  // 23
            -self.comps[4], // 31 = −13
            self.comps[3],  // 12
        ]
    }

    /// Build a 2-form from components in the published order (01, 02, 03, 23, 31, 12).
    pub fn from_bivector6(v: &[f64; 6]) -> PForm {
        let mut f = PForm::zero(2);
        f.comps[0] = v[0];
        f.comps[1] = v[1];
        f.comps[2] = v[2];
        f.comps[5] = v[3];
        f.comps[4] = -v[4];
        f.comps[3] = v[5];
        f
    }
}

impl Add for PForm {
    type Output = PForm;
    fn add(self, rhs: PForm) -> PForm {
        assert_eq!(self.degree, rhs.degree, "degree mismatch in addition");
        let mut out = self;
        for (c, r) in out.comps.iter_mut().zip(rhs.comps.iter()) {
            *c += r;
        }
        out.degenerate = self.degenerate && rhs.degenerate;
        out
    }
}

impl Sub for PForm {
    type Output = PForm;
    fn sub(self, rhs: PForm) -> PForm {
        self + rhs.scale(-1.0)
    }
}

impl Mul<f64> for PForm {
    type Output = PForm;
    fn mul(self, s: f64) -> PForm {
        self.scale(s)
    }
}

impl Neg for PForm {
    type Output = PForm;
    fn neg(self) -> PForm {
        self.scale(-1.0)
    }
}

/// Totally antisymmetric symbol with indices down, derived from the
/// implementation's Hodge dual on basis 2-forms so that it certifies the
/// shipped conventions rather than restating them.
///
/// ε_{abcd} is read off from ⋆(e^a∧e^b) = ½ ε^{ab}_{cd} e^c∧e^d followed by
/// lowering with η. With this stack ε_{0123} = +1 and ε^{0123} = −1.
pub fn epsilon_lower() -> [[[[f64; 4]; 4]; 4]; 4] {
    let mut eps = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            if a == b {
                continue;
            }
            let star = PForm::basis_two_form(a, b).hodge();
            for c in 0..4 {
                for d in 0..4 {
                    if c == d {
                        continue;
                    }
                    // ε^{ab}_{cd} = (⋆(e^a∧e^b))(X_c, X_d); lower a, b with η
                    let comp = star.component(&[c, d]);
                    eps[a][b][c][d] = ETA[a] * ETA[b] * comp;
                }
            }
        }
    }
    eps
}

/// Result of contracting the antisymmetric symbol against itself over two
/// index pairs, together with the fitted convention constant.
#[derive(Debug, Clone)]
pub struct EpsilonContraction {
    /// C^{cd}_{ef} = ε_{abef} ε^{abcd}, indexed \[c\]\[d\]\[e\]\[f\].
    pub tensor: [[[[f64; 4]; 4]; 4]; 4],
    /// Constant K with C^{cd}_{ef} = K (δ^d_e δ^c_f − δ^c_e δ^d_f); K = 2
    /// for this signature and orientation.
    pub constant: f64,
    /// Largest deviation from the fitted identity (0 for exact conventions).
    pub max_residual: f64,
    /// Full contraction ε_{abcd} ε^{abcd}; −24 here.
    pub full_contraction: f64,
}

/// ε_{abef} ε^{abcd} by direct summation, with the raised symbol obtained
/// from the lowered one via η.
pub fn epsilon_contraction() -> EpsilonContraction {
    let lo = epsilon_lower();
    let mut hi = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    hi[a][b][c][d] = ETA[a] * ETA[b] * ETA[c] * ETA[d] * lo[a][b][c][d];
                }
            }
        }
    }
    let mut tensor = [[[[0.0; 4]; 4]; 4]; 4];
    for c in 0..4 {
        for d in 0..4 {
            for e in 0..4 {
                for f in 0..4 {
                    let mut acc = 0.0;
                    for a in 0..4 {
                        for b in 0..4 {
                            acc += lo[a][b][e][f] * hi[a][b][c][d];
                        }
                    }
                    tensor[c][d][e][f] = acc;
                }
            }
        }
    }
    // fit the constant on the (c,d,e,f) = (3,2,2,3) entry where the
    // reference combination δ^d_e δ^c_f − δ^c_e δ^d_f equals +1
    let constant = tensor[3][2][2][3];
    let mut max_residual = 0.0f64;
    for c in 0..4 {
        for d in 0..4 {
            for e in 0..4 {
                for f in 0..4 {
                    let delta = |i: usize, j: usize| if i == j { 1.0 } else { 0.0 };
                    let reference = delta(d, e) * delta(c, f) - delta(c, e) * delta(d, f);
                    max_residual = max_residual.max((tensor[c][d][e][f] - constant * reference).abs());
                }
            }
        }
    }
    let mut full = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    full += lo[a][b][c][d] * hi[a][b][c][d];
                }
            }
        }
    }
    EpsilonContraction {
        tensor,
        constant,
        max_residual,
        full_contraction: full,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{random_form, random_vector};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_close(a: &PForm, b: &PForm, tol: f64) {
        assert_eq!(a.degree(), b.degree());
        let d = (*a - *b).max_abs();
        assert!(d <= tol, "forms differ by {d:e}\n a = {a:?}\n b = {b:?}");
    }

    // Brute-force oracle: forms as full antisymmetric rank-p arrays over
    // 4^p entries, wedge as the antisymmetrised tensor product. Kept fully
    // independent of the PForm basis bookkeeping.
    mod oracle {
        pub fn perm_sign(perm: &[usize]) -> f64 {
            let mut sign = 1.0;
            for i in 0..perm.len() {
                for j in (i + 1)..perm.len() {
                    if perm[i] > perm[j] {
                        sign = -sign;
                    }
                }
            }
            sign
        }

        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in permutations(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }

        /// Full tensor component of a form given by its value on sorted indices.
        pub struct Dense {
            pub degree: usize,
            pub entries: Vec<f64>, // 4^degree entries, row-major
        }

        impl Dense {
            pub fn get(&self, idx: &[usize]) -> f64 {
                let mut pos = 0;
                for &i in idx {
                    pos = pos * 4 + i;
                }
                self.entries[pos]
            }

            pub fn from_pform(f: &crate::exterior::PForm) -> Dense {
                let degree = f.degree();
                let n = 4usize.pow(degree as u32);
                let mut entries = vec![0.0; n];
                for pos in 0..n {
                    let mut idx = vec![0usize; degree];
                    let mut rem = pos;
                    for k in (0..degree).rev() {
                        idx[k] = rem % 4;
                        rem /= 4;
                    }
                    entries[pos] = f.component(&idx);
                }
                Dense { degree, entries }
            }

            /// Antisymmetrised tensor product with the (p+q)!/(p!q!) shuffle
            /// normalisation matching component conventions.
            pub fn wedge(&self, other: &Dense) -> Dense {
                let p = self.degree;
                let q = other.degree;
                let degree = p + q;
                let n = 4usize.pow(degree as u32);
                let mut entries = vec![0.0; n];
                let perms = permutations(degree);
                let norm = 1.0
                    / (1..=p).product::<usize>() as f64
                    / (1..=q).product::<usize>() as f64;
                for pos in 0..n {
                    let mut idx = vec![0usize; degree];
                    let mut rem = pos;
                    for k in (0..degree).rev() {
                        idx[k] = rem % 4;
                        rem /= 4;
                    }
                    let mut acc = 0.0;
                    for perm in &perms {
                        let permuted: Vec<usize> = perm.iter().map(|&k| idx[k]).collect();
                        acc += perm_sign(perm)
                            * self.get(&permuted[..p])
                            * other.get(&permuted[p..]);
                    }
                    entries[pos] = acc * norm;
                }
                Dense { degree, entries }
            }
        }
    }

    #[test]
    fn frame_invariants() {
        assert_eq!(ETA, [-1.0, 1.0, 1.0, 1.0]);
        assert_eq!(Frame::volume().component(&[0, 1, 2, 3]), 1.0);
    }

    #[test]
    fn wedge_basis_cases() {
        let e0 = Frame::basis_one_form(0);
        let e1 = Frame::basis_one_form(1);
        let w = e0.wedge(&e1);
        assert_eq!(w.component(&[0, 1]), 1.0);
        let w = e1.wedge(&e0);
        assert_eq!(w.component(&[0, 1]), -1.0);
    }

    #[test]
    fn wedge_two_forms_commute() {
        // (e^0∧e^1)∧(e^2∧e^3): expected value frozen from the dense oracle
        let a = PForm::basis_two_form(0, 1);
        let b = PForm::basis_two_form(2, 3);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        let oracle = oracle::Dense::from_pform(&a).wedge(&oracle::Dense::from_pform(&b));
        assert_eq!(oracle.get(&[0, 1, 2, 3]), 1.0);
        assert_eq!(ab.component(&[0, 1, 2, 3]), 1.0);
        assert_eq!(ba.component(&[0, 1, 2, 3]), 1.0);
    }

    #[test]
    fn wedge_matches_dense_oracle_on_random_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            for p in 0..=2usize {
                for q in 0..=(4 - p).min(2) {
                    let a = random_form(&mut rng, p);
                    let b = random_form(&mut rng, q);
                    let w = a.wedge(&b);
                    let dense = oracle::Dense::from_pform(&a).wedge(&oracle::Dense::from_pform(&b));
                    let w_dense = oracle::Dense::from_pform(&w);
                    for (got, want) in w_dense.entries.iter().zip(dense.entries.iter()) {
                        assert!((got - want).abs() <= 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn wedge_above_top_degree_is_degenerate_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_form(&mut rng, 3);
        let b = random_form(&mut rng, 2);
        let w = a.wedge(&b);
        assert!(w.is_degenerate());
        assert_eq!(w.degree(), 4);
        assert_eq!(w.max_abs(), 0.0);
    }

    #[test]
    fn interior_basis_cases() {
        let f = Frame::basis_one_form(0).wedge(&Frame::basis_one_form(1));
        let e1 = f.interior(&Frame::basis_vector(0));
        assert_close(&e1, &Frame::basis_one_form(1), 0.0);
        let z = f.interior(&Frame::basis_vector(2));
        assert_eq!(z.max_abs(), 0.0);
    }

    #[test]
    fn interior_is_nilpotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x = random_vector(&mut rng);
            for p in 2..=4 {
                let a = random_form(&mut rng, p);
                let twice = a.interior(&x).interior(&x);
                assert!(twice.max_abs() <= 1e-15 * x.max_abs() * x.max_abs() * a.max_abs());
            }
        }
    }

    #[test]
    fn interior_is_an_antiderivation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let x = random_vector(&mut rng);
            for p in 1..=2usize {
                for q in 1..=(4 - p) {
                    let a = random_form(&mut rng, p);
                    let b = random_form(&mut rng, q);
                    let lhs = a.wedge(&b).interior(&x);
                    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                    let rhs = a.interior(&x).wedge(&b) + a.wedge(&b.interior(&x)).scale(sign);
                    assert_close(&lhs, &rhs, 1e-12);
                }
            }
        }
    }

    #[test]
    fn interior_on_scalars_vanishes() {
        let s = PForm::scalar(2.5);
        let z = s.interior(&Frame::basis_vector(1));
        assert_eq!(z.degree(), 0);
        assert_eq!(z.max_abs(), 0.0);
    }

    #[test]
    fn metric_duals() {
        assert_close(
            &Frame::basis_vector(0).metric_dual(),
            &(-Frame::basis_one_form(0)),
            0.0,
        );
        assert_close(
            &Frame::basis_vector(1).metric_dual(),
            &Frame::basis_one_form(1),
            0.0,
        );
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let x = random_vector(&mut rng);
            let back = metric_dual_form(&x.metric_dual());
            assert!((back - x).max_abs() <= 1e-15);
        }
    }

    #[test]
    fn hodge_convention_cases() {
        assert_close(&PForm::scalar(1.0).hodge(), &Frame::volume(), 0.0);
        // ⋆(e^0∧e^1) = −e^2∧e^3, from Φ∧⋆Ψ = ⟨Φ,Ψ⟩vol with ⟨e^01,e^01⟩ = −1;
        // cross-checked by ⋆⋆ = (−1)^{p+1} below
        let s = PForm::basis_two_form(0, 1).hodge();
        assert_close(&s, &(-PForm::basis_two_form(2, 3)), 0.0);
    }

    #[test]
    fn hodge_matches_levi_civita_oracle_on_all_basis_forms() {
        // independent route: (⋆α)_J = (1/p!) Σ_I α^I ε_{IJ}, with ε the plain
        // permutation symbol (ε_{0123} = +1) and the I indices raised by η
        fn perm_symbol(idx: &[usize; 4]) -> f64 {
            let mut seen = [false; 4];
            for &v in idx {
                if seen[v] {
                    return 0.0;
                }
                seen[v] = true;
            }
            let mut sgn = 1.0;
            let mut s = *idx;
            for x in 0..4 {
                for y in (x + 1)..4 {
                    if s[x] > s[y] {
                        s.swap(x, y);
                        sgn = -sgn;
                    }
                }
            }
            sgn
        }
        for p in 0..=4usize {
            for i in 0..COMP_COUNT[p] {
                let mut comps = vec![0.0; COMP_COUNT[p]];
                comps[i] = 1.0;
                let alpha = PForm::from_components(p, &comps);
                let star = alpha.hodge();
                let fact: f64 = (1..=p).product::<usize>() as f64;
                for (j_pos, j_sorted) in basis_lists(4 - p).iter().enumerate() {
                    let mut acc = 0.0;
                    let tuples = 4usize.pow(p as u32);
                    for pos in 0..tuples {
                        let mut idx = vec![0usize; p];
                        let mut rem = pos;
                        for k in (0..p).rev() {
                            idx[k] = rem % 4;
                            rem /= 4;
                        }
                        let mut raised = alpha.component(&idx);
                        if raised == 0.0 {
                            continue;
                        }
                        for &a in &idx {
                            raised *= ETA[a];
                        }
                        let mut full = [0usize; 4];
                        full[..p].copy_from_slice(&idx);
                        full[p..].copy_from_slice(j_sorted);
                        acc += raised * perm_symbol(&full);
                    }
                    let expected = acc / fact;
                    let got = star.components()[j_pos];
                    assert!(
                        (got - expected).abs() <= 1e-14,
                        "degree {p} basis {i}: got {got}, oracle {expected}"
                    );
                }
            }
        }
    }

    #[test]
    fn hodge_twice_is_signed_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for p in 0..=4usize {
            for _ in 0..100 {
                let a = random_form(&mut rng, p);
                let twice = a.hodge().hodge();
                let sign = if (p + 1) % 2 == 0 { 1.0 } else { -1.0 };
                assert_close(&twice, &a.scale(sign), 1e-14);
            }
        }
    }

    #[test]
    fn epsilon_contraction_constant_and_symmetries() {
        let c = epsilon_contraction();
        assert_eq!(c.constant, 2.0);
        assert_eq!(c.max_residual, 0.0);
        assert_eq!(c.full_contraction, -24.0);
        // antisymmetry under e↔f
        for cc in 0..4 {
            for d in 0..4 {
                for e in 0..4 {
                    for f in 0..4 {
                        assert_eq!(c.tensor[cc][d][e][f], -c.tensor[cc][d][f][e]);
                    }
                }
            }
        }
        // spot entry (e,f) = (2,3), (c,d) = (3,2): reference value +1, so K
        assert_eq!(c.tensor[3][2][2][3], c.constant);
    }

    #[test]
    fn bivector6_published_order_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..50 {
            let f = random_form(&mut rng, 2);
            let v = f.to_bivector6();
            let back = PForm::from_bivector6(&v);
            assert_close(&back, &f, 0.0);
        }
        // e^3∧e^1 has +1 in slot 4 of the published order
        let f = PForm::basis_two_form(3, 1);
        assert_eq!(f.to_bivector6(), [0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    }
}
