//! Seeded randomized property suites shared by the command line and the
//! acceptance tests.

use serde_json::{json, Value};

use crate::calculus::{from_complex_frame, so3_bivector, stokes_check, AffineModel, PoissonModel, Space, TorusModel};
use crate::chern_weil::{
    char_form, covariant_d, curvature, section_times_curvature, transgression_check, FormMatrix, QConnection,
    Transgression,
};
use crate::equivariant::{anticommutator, cartan_d, fourier_invariant, EquivariantElement, GroupAction};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{Form, Symplectic};
use crate::json::{form_to_json, AnyModel, JsonCoeff};
use crate::lefschetz::{commutator_check, hard_lefschetz_check, recursion_step, recursion_verify, Lefschetz};
use crate::linalg::{det_shifted, Matrix};
use crate::quantum::{frobenius_pairing, gram_matrix, qwedge, wedge_w};
use crate::random::{self, TestRng};
use crate::scalar::{CoeffRing, FourierCoeff, PolyCoeff, Rat, Ring};
use rand::Rng;

pub const SUITES: &[&str] = &[
    "normalization",
    "associativity",
    "supercommutativity",
    "koszul",
    "leibniz",
    "dh_squared",
    "frame",
    "stokes",
    "lefschetz",
    "recursion",
    "hard_lefschetz",
    "dolbeault",
    "chern",
    "equivariant",
    "frobenius",
    "basis_invariance",
];

/// Suites built on deliberately corrupted operators; they are expected to fail.
pub const NEGATIVE_CONTROLS: &[&str] = &["leibniz_flipped_iota", "lefschetz_flipped_star"];

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub trial: usize,
    pub property: String,
    pub input: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOutcome {
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub checks: usize,
    pub failures: Vec<Witness>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "checks": self.checks,
            "passed": self.passed(),
            "failures": self.failures.iter().map(|w| json!({"trial": w.trial, "property": w.property, "input": w.input})).collect::<Vec<_>>(),
        })
    }
}

#[derive(Default)]
struct Trial {
    checks: usize,
    failures: Vec<(String, Value)>,
}

impl Trial {
    fn check(&mut self, property: &str, ok: bool, input: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures.push((property.to_string(), input()));
        }
    }
}

/// Per-trial generator seeded from the suite seed and the trial index.
pub fn trial_rng(seed: u64, trial: usize) -> TestRng {
    random::rng(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn run_suite(name: &str, trials: usize, seed: u64, exec: Exec) -> Result<SuiteOutcome> {
    let body: fn(usize, &mut TestRng, &mut Trial) -> Result<()> = match name {
        "normalization" => normalization,
        "associativity" => associativity,
        "supercommutativity" => supercommutativity,
        "koszul" => koszul,
        "leibniz" => |t, r, out| leibniz(t, r, out, false),
        "dh_squared" => dh_squared,
        "frame" => frame,
        "stokes" => stokes,
        "lefschetz" => |t, r, out| lefschetz(t, r, out, false),
        "recursion" => recursion,
        "hard_lefschetz" => hard_lefschetz,
        "dolbeault" => dolbeault,
        "chern" => chern,
        "equivariant" => equivariant,
        "frobenius" => frobenius,
        "basis_invariance" => basis_invariance,
        "leibniz_flipped_iota" => |t, r, out| leibniz(t, r, out, true),
        "lefschetz_flipped_star" => |t, r, out| lefschetz(t, r, out, true),
        other => return Err(Error::Parse(format!("unknown suite {other:?}"))),
    };
    let idx: Vec<usize> = (0..trials).collect();
    let results = exec.map(&idx, |&t| {
        let mut out = Trial::default();
        let mut rng = trial_rng(seed, t);
        body(t, &mut rng, &mut out).map(|_| out)
    });
    let mut checks = 0;
    let mut failures = Vec::new();
    for (t, r) in results.into_iter().enumerate() {
        let r = r?;
        checks += r.checks;
        failures.extend(r.failures.into_iter().map(|(property, input)| Witness { trial: t, property, input }));
    }
    Ok(SuiteOutcome { suite: name.to_string(), trials, seed, checks, failures })
}

/// The calculus identities on random forms over a given model: `δ² = 0`,
/// `dδ + δd = 0`, `d_h² = 0`, the Leibniz rule and, for constant `w`, the
/// frame formula.
pub fn run_model_suite(model: &AnyModel, trials: usize, seed: u64, exec: Exec) -> Result<SuiteOutcome> {
    fn body<C: CoeffRing + JsonCoeff>(
        model: &PoissonModel<C>,
        coeff: fn(&mut TestRng, usize) -> C,
        t: usize,
        seed: u64,
    ) -> Result<Trial> {
        let mut out = Trial::default();
        let mut rng = trial_rng(seed, t);
        let m = model.dim();
        let a = random::form(&mut rng, m, 3, 0..=1, |r| coeff(r, m));
        koszul_on(model, &a, &mut out);
        out.check("d_h² = 0", model.dh(&model.dh(&a)).is_zero(), || form_to_json(&a));
        let (p, q) = (rng.random_range(0..=m as i64), rng.random_range(0..=m as i64));
        let x = random::homogeneous(&mut rng, m, p, 0, 2, |r| coeff(r, m));
        let y = random::homogeneous(&mut rng, m, q, 0, 2, |r| coeff(r, m));
        leibniz_on(model, &x, &y, false, &mut out);
        if model.is_constant() {
            out.check("Σ e^i ∧_h ∂_i a = d a - h δ a", model.frame_formula_d(&a)? == model.dh(&a), || {
                form_to_json(&a)
            });
        }
        Ok(out)
    }
    let idx: Vec<usize> = (0..trials).collect();
    let results = exec.map(&idx, |&t| match model {
        AnyModel::Torus(m) => body(m, |r, d| random::fourier(r, d, 2, 2), t, seed),
        AnyModel::Affine(m) => body(m, |r, d| random::poly(r, d, 2, 2), t, seed),
    });
    let mut checks = 0;
    let mut failures = Vec::new();
    for (t, r) in results.into_iter().enumerate() {
        let r = r?;
        checks += r.checks;
        failures.extend(r.failures.into_iter().map(|(property, input)| Witness { trial: t, property, input }));
    }
    Ok(SuiteOutcome { suite: "model".into(), trials, seed, checks, failures })
}

pub fn matrix_json<C: JsonCoeff + Ring>(m: &Matrix<C>) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array(m.row(i).iter().map(JsonCoeff::to_json).collect())).collect())
}

fn rat_form(rng: &mut TestRng, m: usize, terms: usize) -> Form<Rat> {
    random::form(rng, m, terms, 0..=1, random::small_rat)
}

fn fourier_form(rng: &mut TestRng, m: usize, terms: usize) -> Form<FourierCoeff> {
    random::form(rng, m, terms, 0..=1, |r| random::fourier(r, m, 2, 2))
}

fn poly_form(rng: &mut TestRng, m: usize, terms: usize) -> Form<PolyCoeff> {
    random::form(rng, m, terms, 0..=1, |r| random::poly(r, m, 2, 2))
}

fn lift<C: Ring>(w: &Matrix<Rat>) -> Matrix<C> {
    w.map(C::from_rat)
}

fn constant_torus(rng: &mut TestRng, m: usize) -> Result<TorusModel> {
    PoissonModel::new(Space::Torus, lift(&random::antisymmetric(rng, m)), None, false)
}

fn darboux_torus(n: usize, complex: bool) -> Result<TorusModel> {
    PoissonModel::symplectic(Space::Torus, Symplectic::darboux(n), complex)
}

fn so3() -> Result<AffineModel> {
    PoissonModel::new(Space::Affine, so3_bivector(), None, false)
}

fn rank_two_affine(rng: &mut TestRng, m: usize) -> Result<AffineModel> {
    let f = random::poly(rng, m, 2, 2);
    PoissonModel::new(Space::Affine, random::rank_two_bivector(rng, m, &f), None, false)
}

fn normalization(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let m = 2 + t % 5;
    let w = random::antisymmetric(rng, m);
    for i in 0..m {
        for j in 0..m {
            let ei = Form::<Rat>::basis(m, &[i]);
            let ej = Form::<Rat>::basis(m, &[j]);
            let lhs = wedge_w(&ei, &ej, &w);
            let rhs = ei.wedge(&ej) + Form::scalar(m, w[(i, j)].clone());
            out.check(
                "e^i ∧_w e^j = e^i∧e^j + w^ij",
                lhs == rhs,
                || json!({"w": matrix_json(&w), "i": i + 1, "j": j + 1}),
            );
        }
    }
    Ok(())
}

fn associativity(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let m = 2 + t % 7;
    let w = random::antisymmetric(rng, m);
    let a = rat_form(rng, m, 3);
    let b = rat_form(rng, m, 3);
    let c = rat_form(rng, m, 3);
    let lhs = qwedge(&qwedge(&a, &b, &w), &c, &w);
    let rhs = qwedge(&a, &qwedge(&b, &c, &w), &w);
    out.check(
        "(a ∧_h b) ∧_h c = a ∧_h (b ∧_h c)",
        lhs == rhs,
        || json!({"w": matrix_json(&w), "a": form_to_json(&a), "b": form_to_json(&b), "c": form_to_json(&c)}),
    );
    Ok(())
}

fn supercommutativity(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let m = 2 + t % 7;
    let w = random::antisymmetric(rng, m);
    let p = rng.random_range(0..=m);
    let q = rng.random_range(0..=m);
    let a = random::form_of_degree(rng, m, p, 3, random::small_rat);
    let b = random::form_of_degree(rng, m, q, 3, random::small_rat);
    let sign = if p * q % 2 == 0 { Rat::one() } else { -Rat::one() };
    let lhs = qwedge(&a, &b, &w);
    let rhs = qwedge(&b, &a, &w).scale(&sign);
    out.check(
        "a ∧_h b = (-1)^{|a||b|} b ∧_h a",
        lhs == rhs,
        || json!({"w": matrix_json(&w), "a": form_to_json(&a), "b": form_to_json(&b)}),
    );
    Ok(())
}

fn koszul_on<C: CoeffRing + JsonCoeff>(model: &PoissonModel<C>, a: &Form<C>, out: &mut Trial) {
    let dd = model.delta(&model.delta(a));
    let anti = model.d(&model.delta(a)) + model.delta(&model.d(a));
    let input = || json!({"w": matrix_json(model.bivector()), "a": form_to_json(a)});
    out.check("δ² = 0", dd.is_zero(), input);
    out.check("dδ + δd = 0", anti.is_zero(), input);
}

fn koszul(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    match t % 3 {
        0 => {
            let model = constant_torus(rng, 2 + t % 3)?;
            let a = fourier_form(rng, model.dim(), 3);
            koszul_on(&model, &a, out);
        }
        1 => {
            let model = so3()?;
            let a = poly_form(rng, 3, 3);
            koszul_on(&model, &a, out);
        }
        _ => {
            let model = rank_two_affine(rng, 3 + t % 2)?;
            let a = poly_form(rng, model.dim(), 3);
            koszul_on(&model, &a, out);
        }
    }
    Ok(())
}

fn leibniz_on<C: CoeffRing + JsonCoeff>(
    model: &PoissonModel<C>,
    a: &Form<C>,
    b: &Form<C>,
    flip: bool,
    out: &mut Trial,
) {
    let mut frame = model.frame();
    if flip {
        frame = frame.with_flipped_iota();
    }
    let w = model.bivector();
    let parity = a.graded_degree().map_or(0, |n| n.rem_euclid(2));
    let lhs = frame.dh(&qwedge(a, b, w));
    let second = qwedge(a, &frame.dh(b), w);
    let rhs = qwedge(&frame.dh(a), b, w) + if parity == 0 { second } else { -second };
    out.check(
        "d_h(a ∧_h b) = d_h a ∧_h b + (-1)^|a| a ∧_h d_h b",
        lhs == rhs,
        || json!({"w": matrix_json(w), "a": form_to_json(a), "b": form_to_json(b)}),
    );
}

fn leibniz(t: usize, rng: &mut TestRng, out: &mut Trial, flip: bool) -> Result<()> {
    if t.is_multiple_of(2) {
        let model = constant_torus(rng, 2 + t % 3)?;
        let m = model.dim();
        let (p, q) = (rng.random_range(0..=m as i64), rng.random_range(0..=m as i64));
        let a = random::homogeneous(rng, m, p, 0, 2, |r| random::fourier(r, m, 2, 2));
        let b = random::homogeneous(rng, m, q, 0, 2, |r| random::fourier(r, m, 2, 2));
        leibniz_on(&model, &a, &b, flip, out);
    } else {
        let model = so3()?;
        let (p, q) = (rng.random_range(0..=3), rng.random_range(0..=3));
        let a = random::homogeneous(rng, 3, p, 0, 2, |r| random::poly(r, 3, 2, 2));
        let b = random::homogeneous(rng, 3, q, 0, 2, |r| random::poly(r, 3, 2, 2));
        leibniz_on(&model, &a, &b, flip, out);
    }
    Ok(())
}

fn dh_squared(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    if t.is_multiple_of(2) {
        let model = constant_torus(rng, 2 + t % 3)?;
        let a = fourier_form(rng, model.dim(), 3);
        out.check(
            "d_h² = 0",
            model.dh(&model.dh(&a)).is_zero(),
            || json!({"w": matrix_json(model.bivector()), "a": form_to_json(&a)}),
        );
    } else {
        let model = so3()?;
        let a = poly_form(rng, 3, 3);
        out.check(
            "d_h² = 0",
            model.dh(&model.dh(&a)).is_zero(),
            || json!({"w": matrix_json(model.bivector()), "a": form_to_json(&a)}),
        );
    }
    Ok(())
}

fn frame(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let model = constant_torus(rng, 2 + t % 3)?;
    let a = fourier_form(rng, model.dim(), 3);
    let lhs = model.frame_formula_d(&a)?;
    out.check(
        "Σ e^i ∧_h ∂_i a = d a - h δ a",
        lhs == model.dh(&a),
        || json!({"w": matrix_json(model.bivector()), "a": form_to_json(&a)}),
    );
    Ok(())
}

fn stokes(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let m = if t.is_multiple_of(2) { 2 } else { 4 };
    let omega = Symplectic::new(random::symplectic_matrix(rng, m))?;
    let model = PoissonModel::symplectic(Space::Torus, omega, false)?;
    let a = random::form(rng, m, 4, -1..=1, |r| random::fourier(r, m, 2, 1));
    let report = stokes_check(&model, &a)?;
    let input = || json!({"omega": matrix_json(model.symplectic_structure().unwrap().matrix()), "a": form_to_json(&a)});
    out.check("∫_h dα = 0", report.d.is_zero(), input);
    out.check("∫_h hδα = 0", report.h_delta.is_zero(), input);
    out.check("∫_h d_hα = 0", report.d_h.is_zero(), input);
    Ok(())
}

fn lefschetz(t: usize, rng: &mut TestRng, out: &mut Trial, flip: bool) -> Result<()> {
    let n = 1 + t % 3;
    let mut lf = Lefschetz::darboux(n);
    if flip {
        lf = lf.with_star_sign_flipped();
    }
    if t < 3 {
        let report = commutator_check(&lf, 1);
        for c in report.checks.iter().filter(|c| !c.informational) {
            out.check(c.name, c.holds, || json!({"n": n, "window": 1}));
        }
    }
    let model = darboux_torus(n, false)?;
    let a = random::form(rng, 2 * n, 3, -1..=1, |r| random::fourier(r, 2 * n, 2, 1));
    let input = || json!({"n": n, "a": form_to_json(&a)});
    let dh = |x: &Form<FourierCoeff>| model.dh(x);
    out.check("[L_h, d_h] = 0", lf.l_h(&dh(&a)) == dh(&lf.l_h(&a)), input);
    out.check("[L_h*, d_h] = 0", lf.l_h_star(&dh(&a)) == dh(&lf.l_h_star(&a)), input);
    out.check("[A_h, d_h] = -d_h", lf.a_h(&dh(&a)) - dh(&lf.a_h(&a)) == -dh(&a), input);
    Ok(())
}

fn recursion(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let k = 1 + t % 8;
    let m = Matrix::from_fn(k, k, |_, _| random::small_rat(rng));
    out.check("det(M' + λI) = det(M + (λ+1)I)²", recursion_verify(&m), || json!({"m": matrix_json(&m)}));
    if t == 0 {
        let mut cur = Matrix::<Rat>::zeros(1, 1);
        for step in 0..4 {
            let next = recursion_step(&cur);
            let p = det_shifted(&cur).shift(&Rat::one());
            out.check("iterated recursion from [0]", det_shifted(&next) == p.mul_ref(&p), || json!({"step": step}));
            cur = next;
        }
    }
    Ok(())
}

fn hard_lefschetz(t: usize, _rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    if t >= 3 {
        return Ok(());
    }
    let n = t + 1;
    let lf = Lefschetz::darboux(n);
    for piece in hard_lefschetz_check(&lf, n as i64) {
        let input = || json!({"n": n, "degree": piece.degree});
        out.check("det M_h ≠ 0", !piece.det_mh.is_zero(), input);
        out.check("det M_h* ≠ 0", !piece.det_mh_star.is_zero(), input);
    }
    Ok(())
}

fn dolbeault(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let n = 1 + t % 2;
    let m = 2 * n;
    let model = darboux_torus(n, true)?;
    let cf = model.complex_frame()?;
    let a = fourier_form(rng, m, 3);
    let input = || json!({"n": n, "a": form_to_json(&a)});
    out.check("∂_h² = 0", cf.del_h(&cf.del_h(&a)).is_zero(), input);
    out.check("∂̄_h² = 0", cf.del_bar_h(&cf.del_bar_h(&a)).is_zero(), input);
    out.check("∂_h∂̄_h + ∂̄_h∂_h = 0", (cf.del_h(&cf.del_bar_h(&a)) + cf.del_bar_h(&cf.del_h(&a))).is_zero(), input);
    out.check("d_h = ∂_h + ∂̄_h", cf.dh(&a) == cf.del_h(&a) + cf.del_bar_h(&a), input);
    out.check(
        "complex frame d_h agrees with coordinate d_h",
        from_complex_frame(&cf.dh(&a)) == model.dh(&from_complex_frame(&a)),
        input,
    );
    Ok(())
}

fn small_fourier(rng: &mut TestRng, m: usize) -> FourierCoeff {
    random::fourier(rng, m, 1, 1)
}

fn chern(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let rank = 1 + t % 3;
    let n = if rank == 3 { 1 } else { 1 + (t / 3) % 2 };
    let m = 2 * n;
    let model = darboux_torus(n, false)?;
    let theta: FormMatrix<FourierCoeff> = (0..rank)
        .map(|_| (0..rank).map(|_| random::form_of_degree(rng, m, 1, 1, |r| small_fourier(r, m))).collect())
        .collect();
    let conn = QConnection::new(theta)?;
    let phi: Vec<Form<FourierCoeff>> =
        (0..rank).map(|_| random::form(rng, m, 2, 0..=0, |r| small_fourier(r, m))).collect();
    let input = || {
        json!({
            "n": n,
            "theta": conn.theta.iter().map(|r| r.iter().map(form_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "phi": phi.iter().map(form_to_json).collect::<Vec<_>>(),
        })
    };
    let f = curvature(&model, &conn);
    let dd = covariant_d(&model, &conn, &covariant_d(&model, &conn, &phi)?)?;
    out.check("(d_h^∇)²Φ = Φ ∧_h F_h", dd == section_times_curvature(&model, &phi, &f), input);
    for k in 1..=3 {
        out.check(&format!("d_h tr(F^{k}) = 0"), model.dh(&char_form(&model, &f, k)).is_zero(), input);
    }
    if rank == 1 {
        let beta = random::form_of_degree(rng, m, 1, 1, |r| small_fourier(r, m));
        let moved = QConnection::new(vec![vec![conn.theta[0][0].clone() + beta]])?;
        let exact = matches!(transgression_check(&model, &conn, &moved, 1)?, Transgression::Exact(_));
        out.check("rank-1 transgression is exact", exact, input);
    }
    Ok(())
}

fn equivariant(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let n = 1 + t % 2;
    let m = 2 * n;
    let model = darboux_torus(n, false)?;
    let gens: Vec<Vec<Rat>> =
        (0..n).map(|_| (0..m).map(|_| Rat::from(rng.random_range(-2..=2i64))).collect()).collect();
    let action = GroupAction::translations(gens.clone());
    let a = fourier_form(rng, m, 3);
    for g in 0..action.len() {
        out.check(
            "δι_a + ι_aδ = 0",
            anticommutator(&model, &action, g, &a)?.is_zero(),
            || json!({"generators": matrix_json(&Matrix::from_rows(gens.clone())), "a": form_to_json(&a)}),
        );
    }
    let project = |f: &Form<FourierCoeff>| {
        f.map_coeffs(|c| {
            FourierCoeff::from_modes(
                c.modes()
                    .filter(|(k, _)| {
                        gens.iter().all(|x| {
                            k.iter().zip(x).fold(Rat::zero(), |s, (&ki, xi)| s + xi.mul_ref(&Rat::from(ki))).is_zero()
                        })
                    })
                    .map(|(k, v)| (k.clone(), v.clone())),
            )
        })
    };
    let mut x = EquivariantElement::zero(m, action.len());
    for s in 0..=1u32 {
        let mut mu = vec![0; action.len()];
        mu[0] = s;
        let f = project(&fourier_form(rng, m, 3));
        debug_assert!(fourier_invariant(&gens, &f));
        x.add(mu, &f);
    }
    let dx = cartan_d(&model, &action, &x)?;
    out.check(
        "D_hG² = 0",
        cartan_d(&model, &action, &dx)?.is_zero(),
        || json!({"generators": matrix_json(&Matrix::from_rows(gens.clone())), "x": format!("{x:?}")}),
    );
    Ok(())
}

fn frobenius(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let m = 1 + t % 6;
    let w = random::antisymmetric(rng, m);
    let a = random::form(rng, m, 3, 0..=0, random::small_rat);
    let b = random::form(rng, m, 3, 0..=0, random::small_rat);
    let c = random::form(rng, m, 3, 0..=0, random::small_rat);
    let lhs = frobenius_pairing(&wedge_w(&a, &b, &w), &c, &w)?;
    let rhs = frobenius_pairing(&a, &wedge_w(&b, &c, &w), &w)?;
    out.check(
        "<a ∧_w b, c> = <a, b ∧_w c>",
        lhs == rhs,
        || json!({"w": matrix_json(&w), "a": form_to_json(&a), "b": form_to_json(&b), "c": form_to_json(&c)}),
    );
    if t < 6 {
        let det = gram_matrix(m, &w)?.det();
        out.check("Gram determinant ≠ 0", !det.is_zero(), || json!({"w": matrix_json(&w)}));
    }
    Ok(())
}

/// `T(a ∧_w b) = T a ∧_{w'} T b` for `T: e^i ↦ Σ_a M_{ai} e^a` and
/// `Mᵀ w' M = w`.
fn basis_invariance(t: usize, rng: &mut TestRng, out: &mut Trial) -> Result<()> {
    let m = 2 + t % 5;
    let w = random::antisymmetric(rng, m);
    let map = random::invertible(rng, m);
    let inv = map.inverse().expect("invertible");
    let w2 = inv.transpose().mul(&w).mul(&inv);
    let a = rat_form(rng, m, 3);
    let b = rat_form(rng, m, 3);
    let lhs = qwedge(&a, &b, &w).transform(&map);
    let rhs = qwedge(&a.transform(&map), &b.transform(&map), &w2);
    out.check(
        "product is natural under linear coordinate changes",
        lhs == rhs,
        || json!({"w": matrix_json(&w), "map": matrix_json(&map), "a": form_to_json(&a), "b": form_to_json(&b)}),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_a_few_trials() {
        for name in SUITES {
            let r = run_suite(name, 4, 7, Exec::Sequential).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures.first());
            assert!(r.checks > 0, "{name}");
        }
    }

    #[test]
    fn negative_controls_fail() {
        for name in NEGATIVE_CONTROLS {
            let r = run_suite(name, 6, 7, Exec::Sequential).unwrap();
            assert!(!r.passed(), "{name}");
        }
    }

    #[test]
    fn deterministic_and_exec_independent() {
        let a = run_suite("associativity", 6, 99, Exec::Sequential).unwrap();
        let b = run_suite("associativity", 6, 99, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(run_suite("nonsense", 1, 0, Exec::Sequential).is_err());
        let so3 = crate::json::parse_model(r#"{"space": "affine", "dim": 3, "bivector": [[1, 2, {"poly": [[[0, 0, 1], 1]]}], [1, 3, {"poly": [[[0, 1], -1]]}], [2, 3, {"poly": [[[1], 1]]}]]}"#).unwrap();
        let r = run_model_suite(&so3, 4, 1, Exec::Sequential).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }
}
