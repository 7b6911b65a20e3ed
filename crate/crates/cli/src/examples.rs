//! Worked-example artifacts: closed-form values next to matrix-pipeline
//! values, one CSV per example.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fs;
use std::path::Path;

use quantumness::derived::{real_qubit, schmidt_form};
use quantumness::random::{random_density_matrix, random_unitary, seeded_rng};
use quantumness::{
    coherence_l1_pure_qubit, concurrence_pure_two_qubit, cq_append_ancilla, cq_local_unitary, cq_quantumness,
    density_from_bloch, pauli, phase_damping, pure_pair_quantumness, quantumness, quantumness_coherence_relation,
    quantumness_concurrence_relation, BlochVector, ClassicalQuantumState, DensityMatrix, Ensemble, NormSpec,
    PureState, C64,
};
use rand::Rng;

use crate::error::CliError;

pub const EXAMPLE_TOL: f64 = 1e-9;
const SEED: u64 = 20_190_101;

#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub file_name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub passed: bool,
}

struct Builder {
    artifact: Artifact,
}

impl Builder {
    fn new(file_name: &'static str, header: &[&'static str]) -> Self {
        let mut header = header.to_vec();
        header.push("status");
        Self {
            artifact: Artifact {
                file_name,
                header,
                rows: Vec::new(),
                passed: true,
            },
        }
    }

    fn row(&mut self, cells: Vec<String>, ok: bool) {
        let mut cells = cells;
        cells.push(if ok { "PASS" } else { "FAIL" }.to_string());
        self.artifact.passed &= ok;
        self.artifact.rows.push(cells);
    }

    fn finish(self) -> Artifact {
        self.artifact
    }
}

fn num(x: f64) -> String {
    x.to_string()
}

fn agree(a: f64, b: f64) -> bool {
    (a - b).abs() <= EXAMPLE_TOL
}

fn pair(p1: f64, a: DensityMatrix, b: DensityMatrix) -> Result<Ensemble, CliError> {
    Ok(Ensemble::new(vec![(p1, a), (1.0 - p1, b)])?)
}

fn random_bloch(rng: &mut impl Rng) -> Result<BlochVector, CliError> {
    loop {
        let v: [f64; 3] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        if v.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return Ok(BlochVector::new(v[0], v[1], v[2])?);
        }
    }
}

/// Two qubits from Bloch vectors, Frobenius norm.
pub fn example1() -> Result<Artifact, CliError> {
    let mut b = Builder::new(
        "example1_bloch.csv",
        &["p1", "r1x", "r1y", "r1z", "r2x", "r2y", "r2z", "alpha", "M_formula", "M_matrix"],
    );
    let mut rng = seeded_rng(SEED);
    let mut cases: Vec<(f64, BlochVector, BlochVector)> = vec![
        (0.5, BlochVector::new(1.0, 0.0, 0.0)?, BlochVector::new(0.0, 0.0, 1.0)?),
        (0.5, BlochVector::new(0.0, 0.0, 1.0)?, BlochVector::new(0.0, 0.0, -0.5)?),
    ];
    for _ in 0..20 {
        let p: f64 = rng.gen_range(0.0..1.0);
        cases.push((p, random_bloch(&mut rng)?, random_bloch(&mut rng)?));
    }
    for (p, r1, r2) in cases {
        let alpha = r1.angle_to(&r2);
        let formula = (2.0 * p * (1.0 - p)).sqrt() * r1.length() * r2.length() * alpha.sin();
        let e = pair(p, density_from_bloch(&r1), density_from_bloch(&r2))?;
        let matrix = quantumness(&e, NormSpec::FROBENIUS)?;
        let mut cells: Vec<String> = [p, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z, alpha].iter().map(|&x| num(x)).collect();
        cells.extend([num(formula), num(matrix)]);
        b.row(cells, agree(formula, matrix));
    }
    Ok(b.finish())
}

/// Input state against its phase-damped image, θ = π/4, p = ½.
pub fn example2() -> Result<Artifact, CliError> {
    let mut b = Builder::new("example2_phase_damping.csv", &["lambda", "theta", "M_formula", "M_matrix"]);
    let theta = FRAC_PI_4;
    let rho = density_from_bloch(&BlochVector::new(theta.sin(), 0.0, theta.cos())?);
    let mut previous = f64::NEG_INFINITY;
    for k in 0..=20 {
        let lambda = k as f64 / 20.0;
        let out = phase_damping(lambda)?.apply(&rho)?;
        let matrix = quantumness(&pair(0.5, rho.clone(), out)?, NormSpec::FROBENIUS)?;
        let formula = (2.0f64 * 0.25).sqrt() * (1.0 - (1.0 - lambda).sqrt()) * (theta.sin() * theta.cos()).abs();
        let monotone = matrix >= previous - EXAMPLE_TOL;
        previous = matrix;
        b.row(vec![num(lambda), num(theta), num(formula), num(matrix)], agree(formula, matrix) && monotone);
    }
    Ok(b.finish())
}

/// Two pure states with overlap modulus `c`, trace norm.
pub fn example3() -> Result<Artifact, CliError> {
    let mut b = Builder::new("example3_overlap.csv", &["p1", "c", "M_formula", "M_matrix"]);
    let zero = PureState::basis(2, 0)?;
    for p in [0.5, 0.3] {
        for c in [0.0, 0.25, 0.5, FRAC_1_SQRT_2, 0.9, 1.0] {
            let phi = PureState::new(vec![C64::new(c, 0.0), C64::new((1.0 - c * c).sqrt(), 0.0)])?;
            let matrix = quantumness(&pair(p, zero.projector(), phi.projector())?, NormSpec::TRACE)?;
            let formula = pure_pair_quantumness(p, 1.0 - p, c)?;
            b.row(vec![num(p), num(c), num(formula), num(matrix)], agree(formula, matrix));
        }
    }
    Ok(b.finish())
}

/// `{(½, ψ), (½, |+⟩)}` against l1 coherence.
pub fn example4() -> Result<Artifact, CliError> {
    let mut b = Builder::new(
        "example4_coherence.csv",
        &["alpha", "beta", "C_l1", "M_formula", "M_matrix", "abs_alpha2_minus_beta2"],
    );
    let mut alphas = vec![1.0, FRAC_1_SQRT_2, 0.8, 0.6, 0.0, -0.8];
    let mut rng = seeded_rng(SEED + 4);
    alphas.extend((0..10).map(|_| rng.gen_range(-1.0..1.0)));
    for alpha in alphas {
        let psi = real_qubit(alpha, 1.0)?;
        let beta = psi.amplitudes()[1].re;
        let (matrix, c) = quantumness_coherence_relation(&psi)?;
        debug_assert_eq!(c, coherence_l1_pure_qubit(&psi)?);
        let formula = (1.0 - c * c).max(0.0).sqrt();
        let diff = (alpha * alpha - beta * beta).abs();
        b.row(
            vec![num(alpha), num(beta), num(c), num(formula), num(matrix), num(diff)],
            agree(formula, matrix) && agree(diff, matrix),
        );
    }
    Ok(b.finish())
}

/// `{(½, ψ), (½, |φ⁺⟩)}` against concurrence.
pub fn example5() -> Result<Artifact, CliError> {
    let mut b = Builder::new("example5_concurrence.csv", &["alpha", "beta", "C", "M_formula", "M_matrix"]);
    let mut alphas = vec![FRAC_1_SQRT_2, 1.0, 0.8, 0.9, 0.95];
    let mut rng = seeded_rng(SEED + 5);
    alphas.extend((0..10).map(|_| rng.gen_range(FRAC_1_SQRT_2..1.0)));
    for alpha in alphas {
        let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
        let psi = schmidt_form(alpha, beta)?;
        let (matrix, c) = quantumness_concurrence_relation(&psi)?;
        debug_assert_eq!(c, concurrence_pure_two_qubit(&psi)?);
        let formula = (1.0 - c * c).max(0.0).sqrt();
        b.row(vec![num(alpha), num(beta), num(c), num(formula), num(matrix)], agree(formula, matrix));
    }
    Ok(b.finish())
}

/// Classical-quantum states: zero set, local unitaries, ancillas.
pub fn example6() -> Result<Artifact, CliError> {
    let mut b = Builder::new("example6_classical_quantum.csv", &["case", "D_expected", "D_matrix"]);
    let spec = NormSpec::TRACE;
    let push = |b: &mut Builder, case: &str, expected: f64, got: f64| {
        b.row(vec![case.to_string(), num(expected), num(got)], agree(expected, got));
    };

    let classical = ClassicalQuantumState::new(
        vec![0.3, 0.7],
        vec![DensityMatrix::diagonal(&[0.9, 0.1])?, DensityMatrix::diagonal(&[0.2, 0.8])?],
    )?;
    let d = cq_quantumness(&classical, spec)?;
    b.row(vec!["classical-classical".into(), num(0.0), num(d)], d == 0.0);

    let mut rng = seeded_rng(SEED + 6);
    let single = ClassicalQuantumState::new(vec![1.0], vec![random_density_matrix(2, 2, &mut rng)?])?;
    let d = cq_quantumness(&single, spec)?;
    b.row(vec!["single-block".into(), num(0.0), num(d)], d == 0.0);

    let zero_plus = ClassicalQuantumState::new(
        vec![0.5, 0.5],
        vec![PureState::basis(2, 0)?.projector(), PureState::plus().projector()],
    )?;
    let d0 = cq_quantumness(&zero_plus, spec)?;
    push(&mut b, "zero-plus", pure_pair_quantumness(0.5, 0.5, FRAC_1_SQRT_2)?, d0);

    let flipped = cq_local_unitary(&zero_plus, &pauli::x())?;
    push(&mut b, "local-unitary-x", d0, cq_quantumness(&flipped, spec)?);
    let u = random_unitary(2, &mut rng)?;
    push(&mut b, "local-unitary-random", d0, cq_quantumness(&cq_local_unitary(&zero_plus, &u)?, spec)?);

    // [ρi⊗σ, ρj⊗σ] = [ρi, ρj]⊗σ², so the trace norm scales by tr σ²
    let ancillas = [
        ("ancilla-pure", PureState::basis(2, 0)?.projector()),
        ("ancilla-maximally-mixed", DensityMatrix::maximally_mixed(2)),
        ("ancilla-random", random_density_matrix(3, 3, &mut rng)?),
    ];
    for (case, sigma) in ancillas {
        let d = cq_quantumness(&cq_append_ancilla(&zero_plus, &sigma), spec)?;
        push(&mut b, case, d0 * sigma.purity(), d);
    }
    Ok(b.finish())
}

pub fn all_examples() -> Result<Vec<Artifact>, CliError> {
    Ok(vec![example1()?, example2()?, example3()?, example4()?, example5()?, example6()?])
}

pub fn write_artifact(dir: &Path, artifact: &Artifact) -> Result<(), CliError> {
    let path = dir.join(artifact.file_name);
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(&path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    w.write_record(&artifact.header)?;
    for row in &artifact.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes all six artifacts into `dir`, creating it if needed.
pub fn write_all(dir: &Path) -> Result<Vec<Artifact>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let artifacts = all_examples()?;
    for a in &artifacts {
        write_artifact(dir, a)?;
    }
    Ok(artifacts)
}
