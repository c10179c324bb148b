//! Randomized conformance suites shared by the library tests, the
//! acceptance suite and the CLI self-test: the algebraic identity set, the
//! convention pins, and the structural round trips.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exterior::{Frame, PForm};
use crate::fields::{decompose_f, reconstruct_f, SpacetimeField};
use crate::media::{build_from_zeta, extract_zeta};
use crate::sampling::{
    random_coframe_variation, random_form, random_self_adjoint_constitutive, random_vector,
    random_velocity,
};
use crate::sem::{drive_to_tensor, tensor_to_drive, DriveForms};
use crate::variation::verify_variation;

/// Worst error per algebraic identity over the random sweep.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub wedge_commutation: f64,
    pub star_pivot: f64,
    pub interior_star: f64,
    pub star_interior: f64,
    pub star_star: f64,
    pub interior_move: f64,
    pub derivative_move: f64,
}

impl IdentityReport {
    pub fn max(&self) -> f64 {
        [
            self.wedge_commutation,
            self.star_pivot,
            self.interior_star,
            self.star_interior,
            self.star_star,
            self.interior_move,
            self.derivative_move,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn entries(&self) -> [(&'static str, f64); 7] {
        [
            ("wedge_commutation", self.wedge_commutation),
            ("star_pivot", self.star_pivot),
            ("interior_star", self.interior_star),
            ("star_interior", self.star_interior),
            ("star_star", self.star_star),
            ("interior_move", self.interior_move),
            ("derivative_move", self.derivative_move),
        ]
    }
}

/// Optional deliberate convention break, used to prove the self-test can
/// fail loudly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConventionOverride {
    #[default]
    None,
    /// Negate every Hodge dual inside the checks.
    FlippedOrientation,
}

fn star(f: &PForm, flip: ConventionOverride) -> PForm {
    match flip {
        ConventionOverride::None => f.hodge(),
        ConventionOverride::FlippedOrientation => f.hodge().scale(-1.0),
    }
}

/// Run each identity on `n` random tuples; returns the worst absolute
/// error per identity on unit-scale inputs.
pub fn identity_suite(seed: u64, n: usize, flip: ConventionOverride) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IdentityReport {
        wedge_commutation: 0.0,
        star_pivot: 0.0,
        interior_star: 0.0,
        star_interior: 0.0,
        star_star: 0.0,
        interior_move: 0.0,
        derivative_move: 0.0,
    };

    for _ in 0..n {
        // Φ∧Ψ = (−1)^{pq} Ψ∧Φ
        let p = rng.gen_range(0..=2usize);
        let q = rng.gen_range(0..=(4 - p));
        let phi = random_form(&mut rng, p);
        let psi = random_form(&mut rng, q);
        let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
        let err = (phi.wedge(&psi) - psi.wedge(&phi).scale(sign)).max_abs();
        report.wedge_commutation = report.wedge_commutation.max(err);
        // associativity and bilinearity fold into the same budget
        let r = rng.gen_range(0..=(4 - p - q));
        let rho = random_form(&mut rng, r);
        let assoc = (phi.wedge(&psi).wedge(&rho) - phi.wedge(&psi.wedge(&rho))).max_abs();
        report.wedge_commutation = report.wedge_commutation.max(assoc);
        let phi2 = random_form(&mut rng, p);
        let c = rng.gen_range(-2.0..2.0);
        let bilinear = ((phi + phi2.scale(c)).wedge(&psi)
            - (phi.wedge(&psi) + phi2.wedge(&psi).scale(c)))
        .max_abs();
        report.wedge_commutation = report.wedge_commutation.max(bilinear);
    }

    for _ in 0..n {
        // Φ∧⋆Ψ = Ψ∧⋆Φ for equal degrees
        let p = rng.gen_range(0..=4usize);
        let phi = random_form(&mut rng, p);
        let psi = random_form(&mut rng, p);
        let err = (phi.wedge(&star(&psi, flip)) - psi.wedge(&star(&phi, flip))).max_abs();
        report.star_pivot = report.star_pivot.max(err);
    }

    for _ in 0..n {
        // i_X ⋆Φ = ⋆(Φ∧X̃)
        let p = rng.gen_range(0..=4usize);
        let phi = random_form(&mut rng, p);
        let x = random_vector(&mut rng);
        let lhs = star(&phi, flip).interior(&x);
        let rhs = star(&phi.wedge(&x.metric_dual()), flip);
        let err = if p == 4 {
            // Φ∧X̃ is degenerate; both sides vanish
            lhs.max_abs().max(rhs.max_abs())
        } else {
            (lhs - rhs).max_abs()
        };
        report.interior_star = report.interior_star.max(err);
    }

    for _ in 0..n {
        // ⋆i_X Φ = −⋆Φ∧X̃
        let p = rng.gen_range(1..=4usize);
        let phi = random_form(&mut rng, p);
        let x = random_vector(&mut rng);
        let lhs = star(&phi.interior(&x), flip);
        let rhs = star(&phi, flip).wedge(&x.metric_dual()).scale(-1.0);
        let err = (lhs - rhs).max_abs();
        report.star_interior = report.star_interior.max(err);
    }

    for _ in 0..n {
        // ⋆⋆Φ = (−1)^{p+1} Φ — and the orientation pins ⋆1 = vol,
        // vol component +1, which break under a deliberate flip
        let p = rng.gen_range(0..=4usize);
        let phi = random_form(&mut rng, p);
        let sign = if (p + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let err = (star(&star(&phi, flip), flip) - phi.scale(sign)).max_abs();
        let pin = (star(&PForm::scalar(1.0), flip) - Frame::volume()).max_abs();
        report.star_star = report.star_star.max(err).max(pin);
    }

    for _ in 0..n {
        // i_X Φ∧Ψ = (−1)^{p+1} Φ∧i_X Ψ for p + q ≥ 5
        let p = rng.gen_range(2..=3usize);
        let q = 5 - p + usize::from(p == 2 && rng.gen_bool(0.5)); // p+q ∈ {5, 6}
        let q = q.min(4);
        let phi = random_form(&mut rng, p);
        let psi = random_form(&mut rng, q);
        let x = random_vector(&mut rng);
        let sign = if (p + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let err = (phi.interior(&x).wedge(&psi) - phi.wedge(&psi.interior(&x)).scale(sign))
            .max_abs();
        report.interior_move = report.interior_move.max(err);
    }

    for _ in 0..n {
        // dΦ∧Ψ = (−1)^{p+1} Φ∧dΨ for p + q = 4, algebraic content checked
        // with quadratic samplers where central differences are exact
        let p = rng.gen_range(1..=3usize);
        let q = 4 - p;
        let (phi_field, phi_val, dphi) = random_quadratic_field(&mut rng, p);
        let (psi_field, psi_val, dpsi) = random_quadratic_field(&mut rng, q);
        let _ = (phi_field, psi_field);
        let sign = if (p + 1) % 2 == 0 { 1.0 } else { -1.0 };
        let err = (dphi.wedge(&psi_val) - phi_val.wedge(&dpsi).scale(sign)).max_abs();
        report.derivative_move = report.derivative_move.max(err);
    }

    report
}

/// A form field with quadratic coefficient functions, its value and its
/// finite-difference exterior derivative at a fixed probe point.
fn random_quadratic_field<R: Rng>(rng: &mut R, degree: usize) -> (SpacetimeField, PForm, PForm) {
    use crate::exterior::COMP_COUNT;
    let n = COMP_COUNT[degree];
    // coefficient c + Σ l_μ x^μ + Σ q_μ (x^μ)² per component
    let mut consts = Vec::with_capacity(n);
    let mut lin = Vec::with_capacity(n);
    let mut quad = Vec::with_capacity(n);
    for _ in 0..n {
        consts.push(rng.gen_range(-1.0..1.0));
        lin.push([
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ]);
        quad.push([
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ]);
    }
    let field = SpacetimeField::new(degree, 1e-3, move |x| {
        let comps: Vec<f64> = (0..n)
            .map(|i| {
                let mut v = consts[i];
                for mu in 0..4 {
                    v += lin[i][mu] * x[mu] + quad[i][mu] * x[mu] * x[mu];
                }
                v
            })
            .collect();
        PForm::from_components(degree, &comps)
    });
    let x = [
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    ];
    let value = field.sample(&x);
    let derivative = crate::fields::exterior_derivative(&field, &x).expect("finite samples");
    (field, value, derivative)
}

/// Worst error per structural round trip over the random sweep.
#[derive(Debug, Clone)]
pub struct RoundTripReport {
    pub field_decomposition: f64,
    pub zeta_blocks: f64,
    pub drive_tensor: f64,
}

impl RoundTripReport {
    pub fn max(&self) -> f64 {
        self.field_decomposition.max(self.zeta_blocks).max(self.drive_tensor)
    }
}

pub fn round_trip_suite(seed: u64, n: usize) -> RoundTripReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RoundTripReport {
        field_decomposition: 0.0,
        zeta_blocks: 0.0,
        drive_tensor: 0.0,
    };
    for _ in 0..n {
        let f = random_form(&mut rng, 2);
        let u = random_velocity(&mut rng, 1.2);
        let dec = decompose_f(&f, &u);
        let back = reconstruct_f(&dec, &u).expect("spatial by construction");
        report.field_decomposition = report.field_decomposition.max((back - f).max_abs());
    }
    for _ in 0..n {
        let z = random_self_adjoint_constitutive(&mut rng);
        let v = random_velocity(&mut rng, 1.2);
        let blocks = extract_zeta(&z, &v);
        let rebuilt = build_from_zeta(&blocks).expect("extracted blocks are valid");
        let err = rebuilt
            .matrix6()
            .iter()
            .flatten()
            .zip(z.matrix6().iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        report.zeta_blocks = report.zeta_blocks.max(err);
    }
    for _ in 0..n {
        let tau = DriveForms {
            tau: [
                random_form(&mut rng, 3),
                random_form(&mut rng, 3),
                random_form(&mut rng, 3),
                random_form(&mut rng, 3),
            ],
        };
        let back = tensor_to_drive(&drive_to_tensor(&tau));
        report.drive_tensor = report.drive_tensor.max(back.max_abs_diff(&tau));
    }
    report
}

/// Aggregate self-test: identities, round trips and one variational check.
#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub identities: IdentityReport,
    pub round_trips: RoundTripReport,
    pub variation_residual: f64,
    pub identity_tol: f64,
    pub round_trip_tol: f64,
    pub variation_tol: f64,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.identities.max() <= self.identity_tol
            && self.round_trips.max() <= self.round_trip_tol
            && self.variation_residual <= self.variation_tol
    }
}

pub fn selftest(seed: u64, n: usize, flip: ConventionOverride) -> SelftestReport {
    let identities = identity_suite(seed, n, flip);
    let round_trips = round_trip_suite(seed.wrapping_add(1), n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let z = random_self_adjoint_constitutive(&mut rng);
    let v = random_velocity(&mut rng, 0.8);
    let blocks = extract_zeta(&z, &v);
    let f = random_form(&mut rng, 2);
    let var = random_coframe_variation(&mut rng, 1.0);
    let check = verify_variation(&blocks, &f, &var, crate::variation::DEFAULT_FD_STEP)
        .expect("valid variation inputs");
    SelftestReport {
        identities,
        round_trips,
        variation_residual: check.residual,
        identity_tol: 1e-12,
        round_trip_tol: 1e-12,
        variation_tol: 1e-7,
    }
}
