//! Parameter sweeps comparing closed forms against the full matrix pipeline.

use std::io::Write;
use std::str::FromStr;

use quantumness::{
    density_from_bloch, phase_damping, pure_pair_quantumness, quantumness, BlochVector, Ensemble, NormSpec,
    PureState, C64,
};

use crate::error::CliError;

/// Row-wise tolerance between the formula and matrix columns.
pub const AGREEMENT_TOL: f64 = 1e-9;
const MAX_GRID_POINTS: usize = 1_000_000;

/// A single value `x` or an inclusive range `start:stop:step`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    values: Vec<f64>,
}

impl Grid {
    pub fn single(x: f64) -> Self {
        Self { values: vec![x] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| -> Result<f64, String> {
            let x: f64 = t.trim().parse().map_err(|_| format!("`{t}` is not a number"))?;
            if !x.is_finite() {
                return Err(format!("`{t}` is not finite"));
            }
            Ok(x)
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [x] => Ok(Self::single(parse(x)?)),
            [a, b, h] => {
                let (start, stop, step) = (parse(a)?, parse(b)?, parse(h)?);
                if step <= 0.0 {
                    return Err(format!("grid step must be positive, got {step}"));
                }
                if stop < start {
                    return Err(format!("grid stop {stop} is below start {start}"));
                }
                let span = (stop - start) / step;
                if span > MAX_GRID_POINTS as f64 {
                    return Err(format!("grid `{s}` has more than {MAX_GRID_POINTS} points"));
                }
                // tolerate round-off in the last step, never overshoot stop
                let count = (span + 1e-9).floor() as usize + 1;
                let values = (0..count)
                    .map(|k| {
                        let x = start + k as f64 * step;
                        if k + 1 == count && (stop - x).abs() <= 1e-9 * step {
                            stop
                        } else {
                            x.min(stop)
                        }
                    })
                    .collect();
                Ok(Self { values })
            }
            _ => Err(format!("grid `{s}` must be `x` or `start:stop:step`")),
        }
    }
}

/// Swept parameters followed by `M_formula` and `M_matrix`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub params: Vec<&'static str>,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: Vec<f64>,
    pub formula: f64,
    pub matrix: f64,
}

impl SweepTable {
    pub fn header(&self) -> Vec<String> {
        let mut h: Vec<String> = self.params.iter().map(|s| s.to_string()).collect();
        h.push("M_formula".into());
        h.push("M_matrix".into());
        h
    }

    pub fn max_disagreement(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| (r.formula - r.matrix).abs())
            .fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(self.header())?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.params.iter().map(|x| x.to_string()).collect();
            rec.push(row.formula.to_string());
            rec.push(row.matrix.to_string());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn two_member(p1: f64, a: quantumness::DensityMatrix, b: quantumness::DensityMatrix) -> Result<Ensemble, CliError> {
    if !(0.0..=1.0).contains(&p1) {
        return Err(CliError::Usage(format!("p1 = {p1} outside [0, 1]")));
    }
    Ok(Ensemble::new(vec![(p1, a), (1.0 - p1, b)])?)
}

/// Two qubits with Bloch vectors `r1·ẑ` and `r2·(sin α, 0, cos α)`, Frobenius
/// norm. Formula: `√(2 p1 p2) |r1| |r2| |sin α|`.
pub fn bloch_angle(p1: &Grid, r1: &Grid, r2: &Grid, alpha: &Grid) -> Result<SweepTable, CliError> {
    let mut rows = Vec::new();
    for &p in p1.values() {
        for &l1 in r1.values() {
            for &l2 in r2.values() {
                for &a in alpha.values() {
                    let v1 = BlochVector::new(0.0, 0.0, l1)?;
                    let v2 = BlochVector::new(l2 * a.sin(), 0.0, l2 * a.cos())?;
                    let e = two_member(p, density_from_bloch(&v1), density_from_bloch(&v2))?;
                    let matrix = quantumness(&e, NormSpec::FROBENIUS)?;
                    let formula = (2.0 * p * (1.0 - p)).sqrt() * l1.abs() * l2.abs() * a.sin().abs();
                    rows.push(SweepRow {
                        params: vec![p, l1, l2, a],
                        formula,
                        matrix,
                    });
                }
            }
        }
    }
    Ok(SweepTable {
        params: vec!["p1", "r1", "r2", "alpha"],
        rows,
    })
}

/// `{(p1, ρ), (p2, Φ_λ(ρ))}` for a pure qubit `ρ` at polar angle `θ`,
/// azimuth `φ`, under phase damping; Frobenius norm. Formula:
/// `√(2 p1 p2) (1 − √(1−λ)) |sin θ cos θ|`.
pub fn phase_damping_sweep(p1: &Grid, theta: &Grid, phi: &Grid, lambda: &Grid) -> Result<SweepTable, CliError> {
    let mut rows = Vec::new();
    for &p in p1.values() {
        for &t in theta.values() {
            for &f in phi.values() {
                let r = BlochVector::new(t.sin() * f.cos(), t.sin() * f.sin(), t.cos())?;
                let rho = density_from_bloch(&r);
                for &l in lambda.values() {
                    let out = phase_damping(l)?.apply(&rho)?;
                    let e = two_member(p, rho.clone(), out)?;
                    let matrix = quantumness(&e, NormSpec::FROBENIUS)?;
                    let formula = (2.0 * p * (1.0 - p)).sqrt() * (1.0 - (1.0 - l).sqrt()) * (t.sin() * t.cos()).abs();
                    rows.push(SweepRow {
                        params: vec![p, t, f, l],
                        formula,
                        matrix,
                    });
                }
            }
        }
    }
    Ok(SweepTable {
        params: vec!["p1", "theta", "phi", "lambda"],
        rows,
    })
}

/// Pure pair `|0⟩` and `c e^{iθ}|0⟩ + √(1−c²)|d−1⟩` in dimension `d`, trace
/// norm. Formula: `4c√(p1 p2)√(1−c²)`.
pub fn overlap_sweep(p1: &Grid, c: &Grid, phase: &Grid, dim: usize) -> Result<SweepTable, CliError> {
    if dim < 2 {
        return Err(CliError::Usage("overlap sweep needs dim >= 2".into()));
    }
    let psi = PureState::basis(dim, 0)?;
    let mut rows = Vec::new();
    for &p in p1.values() {
        for &cc in c.values() {
            if !(0.0..=1.0).contains(&cc) {
                return Err(CliError::Usage(format!("overlap c = {cc} outside [0, 1]")));
            }
            for &th in phase.values() {
                let mut amps = vec![C64::new(0.0, 0.0); dim];
                amps[0] = C64::from_polar(cc, th);
                amps[dim - 1] = C64::new((1.0 - cc * cc).sqrt(), 0.0);
                let phi = PureState::new(amps)?;
                let e = two_member(p, psi.projector(), phi.projector())?;
                let matrix = quantumness(&e, NormSpec::TRACE)?;
                let formula = pure_pair_quantumness(p, 1.0 - p, cc)?;
                rows.push(SweepRow {
                    params: vec![p, cc, th],
                    formula,
                    matrix,
                });
            }
        }
    }
    Ok(SweepTable {
        params: vec!["p1", "c", "phase"],
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!("0.5".parse::<Grid>().unwrap().values(), [0.5]);
        let g: Grid = "0:1:0.01".parse().unwrap();
        assert_eq!(g.values().len(), 101);
        assert_eq!(g.values()[0], 0.0);
        assert_eq!(*g.values().last().unwrap(), 1.0);
        assert!(g.values().iter().all(|&x| x <= 1.0));
        let g: Grid = "0:1:0.3".parse().unwrap();
        assert_eq!(g.values().len(), 4);
        for bad in ["0:1:0", "1:0:0.1", "a", "0:1", "0:1:-1", "0:inf:1", "0:1e9:1e-3"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }

    #[test]
    fn bloch_angle_zero_gives_zero_column() {
        let t = bloch_angle(&Grid::single(0.5), &Grid::single(1.0), &"0.2:1:0.2".parse().unwrap(), &Grid::single(0.0)).unwrap();
        assert!(t.rows.iter().all(|r| r.matrix == 0.0 && r.formula == 0.0));
    }

    #[test]
    fn csv_layout() {
        let t = overlap_sweep(&Grid::single(0.5), &"0:1:0.5".parse().unwrap(), &Grid::single(0.0), 2).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("p1,c,phase,M_formula,M_matrix\n"));
        assert_eq!(text.lines().count(), 4);
        assert!(!text.contains('\r'));
    }

    #[test]
    fn invalid_parameters_are_usage_errors() {
        let bad_c = overlap_sweep(&Grid::single(0.5), &Grid::single(1.5), &Grid::single(0.0), 2);
        assert_eq!(bad_c.unwrap_err().exit_code(), 2);
        let bad_lambda = phase_damping_sweep(&Grid::single(0.5), &Grid::single(0.3), &Grid::single(0.0), &Grid::single(2.0));
        assert_eq!(bad_lambda.unwrap_err().exit_code(), 2);
        let bad_p = bloch_angle(&Grid::single(1.5), &Grid::single(1.0), &Grid::single(1.0), &Grid::single(1.0));
        assert!(bad_p.is_err());
    }
}
