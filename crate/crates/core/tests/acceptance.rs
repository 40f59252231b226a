//! Acceptance suite. Runs as a plain binary so every criterion reports a
//! PASS/FAIL line even when an earlier one fails.

use std::time::Instant;

use field_entangle::model::DEFAULT_C_T;
use field_entangle::oracle::{dense_renyi_entropy, perturbative_check, renyi_field_entropy, LatticeSpec, PerturbativeCheck, Subsystem};
use field_entangle::quad::McConfig;
use field_entangle::replica::{
    evaluate_diagram, fit_power_law, renyi_cubic, renyi_ssb, renyi_unbroken, short_range_fraction, xcheck_momentum_with,
    DiagramSpec, Line,
};
use field_entangle::{FieldTheory, RenyiIndex, Result};

type Outcome = Result<(bool, String)>;

fn alpha(a: u32) -> RenyiIndex {
    RenyiIndex::new(a).unwrap()
}

fn cutoff_scaling() -> Outcome {
    let base = FieldTheory::unbroken(2, 0.1, 1.0, 10.0)?;
    let mut points = Vec::new();
    for cutoff in [10.0, 15.0, 20.0, 30.0, 50.0] {
        let v = renyi_unbroken(alpha(2), &base.with_cutoff(cutoff)?)?.value_per_volume;
        points.push((cutoff, v));
    }
    let fit = fit_power_law(&points)?;
    Ok(((fit.exponent - 3.0).abs() <= 0.1, format!("p = {:.4} (target 3.0 ± 0.1), rms {:.2e}", fit.exponent, fit.residual)))
}

fn alpha_prefactor() -> Outcome {
    let unbroken = FieldTheory::unbroken(3, 0.1, 1.0, 20.0)?;
    let broken = FieldTheory::broken(3, 0.1, 1.0, 20.0)?;
    let families: [(&str, Box<dyn Fn(RenyiIndex) -> Result<f64>>); 3] = [
        ("unbroken", Box::new(|a| Ok(renyi_unbroken(a, &unbroken)?.value_per_volume))),
        ("cubic", Box::new(|a| Ok(renyi_cubic(a, 0.1, 1.0, 1.0, 20.0)?.value_per_volume))),
        ("ssb", Box::new(|a| Ok(renyi_ssb(a, &broken, 0.01, DEFAULT_C_T)?.value_per_volume))),
    ];
    let mut worst: f64 = 0.0;
    for (_, f) in &families {
        let reduced: Vec<f64> = (2..=5)
            .map(|a| Ok(f(alpha(a))? * (a - 1) as f64 / a as f64))
            .collect::<Result<_>>()?;
        for r in &reduced {
            worst = worst.max((r - reduced[0]).abs() / reduced[0]);
        }
    }
    Ok((worst <= 1e-12, format!("max relative spread {worst:.1e} over α ∈ {{2,3,4,5}}")))
}

fn n_linearity() -> Outcome {
    let base = FieldTheory::unbroken(2, 0.1, 1.0, 20.0)?;
    let v2 = renyi_unbroken(alpha(2), &base)?.value_per_volume;
    let mut exact = true;
    let mut worst_ratio: f64 = 0.0;
    for n in 2..=10 {
        let v = renyi_unbroken(alpha(2), &base.with_n_fields(n)?)?.value_per_volume;
        exact &= v == (n - 1) as f64 * v2;
        worst_ratio = worst_ratio.max((v / v2 - (n - 1) as f64).abs());
    }
    Ok((exact, format!("S(N) = (N−1)·S(2) bitwise for N = 2..10; max |ratio − (N−1)| = {worst_ratio:.1e}")))
}

fn dual_path() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (i, (mass, cutoff)) in [(1.0, 10.0), (1.0, 20.0), (0.5, 10.0)].into_iter().enumerate() {
        let model = FieldTheory::unbroken(2, 0.1, mass, cutoff)?;
        let radial = renyi_unbroken(alpha(2), &model)?;
        let cfg = McConfig::new(1_000_000, 1000 + i as u64).with_tolerance(Some(0.25));
        let mc = xcheck_momentum_with(alpha(2), &model, &cfg)?;
        let sigma = (mc.value_per_volume - radial.value_per_volume).abs() / (mc.error + radial.error);
        ok &= sigma < 3.0;
        notes.push(format!("(m={mass}, Λ={cutoff}) {sigma:.2}σ"));
    }
    Ok((ok, notes.join(", ")))
}

fn cancellation() -> Outcome {
    let mut ok = true;
    let mut count = 0;
    for lines in 2..=6 {
        for focused in [true, false] {
            for coefficient in [1.0, 0.005, -3.0] {
                let d = DiagramSpec {
                    focused_lines: if focused { lines } else { 0 },
                    traced_lines: if focused { 0 } else { lines },
                    coefficient,
                    species: 4,
                    focused_mass: 1.0,
                    traced_mass: 0.5,
                    regulator: 20.0,
                };
                let c = evaluate_diagram(&d, alpha(2))?;
                ok &= c.value == 0.0 && c.error == 0.0;
                count += 1;
            }
        }
    }
    Ok((ok, format!("{count} single-species diagrams, all exactly 0")))
}

fn short_range() -> Outcome {
    let lines = [Line::regulated(1.0, 20.0); 4];
    let near = short_range_fraction(&lines, 20.0, 10.0 / 20.0)?;
    let far = short_range_fraction(&lines, 20.0, 1.0)?;
    Ok((near < 0.01 && far < near, format!("f(s > 10/Λ) = {near:.2e}, f(s > 1/m) = {far:.2e}")))
}

fn ssb_enhancement() -> Outcome {
    let mut ok = true;
    let mut min_gain = f64::INFINITY;
    for n in [2, 4] {
        let model = FieldTheory::broken(n, 0.1, 1.0, 20.0)?;
        for lambda_u in [0.001, 0.01, 0.05] {
            let r = renyi_ssb(alpha(2), &model, lambda_u, DEFAULT_C_T)?;
            let ddkk = r.contribution("DDKK").unwrap_or(0.0);
            let dkk = r.contribution("DKK").unwrap_or(0.0);
            ok &= ddkk > 0.0 && dkk > 0.0 && r.value_per_volume > ddkk;
            min_gain = min_gain.min(r.value_per_volume / ddkk);
        }
    }
    Ok((ok, format!("all contributions > 0; min total/DDKK = {min_gain:.3}")))
}

fn oracle_order() -> Outcome {
    let base = LatticeSpec::new(1, 32, 1.0, 1.0, 0.0)?;
    let r = perturbative_check(&base, 2, &PerturbativeCheck::default())?;
    let ok = (r.exponent - 2.0).abs() <= 0.05 && (r.ratio_s3_s2 - 0.75).abs() <= 0.02;
    Ok((ok, format!("exponent {:.4}, S₃/S₂ = {:.5}", r.exponent, r.ratio_s3_s2)))
}

fn oracle_volume() -> Outcome {
    let s = |l: usize| -> Result<f64> {
        let spec = LatticeSpec::new(1, l, 1.0, 1.0, 0.3)?;
        Ok(renyi_field_entropy(&spec, 2)? / l as f64)
    };
    let (s16, s32) = (s(16)?, s(32)?);
    let rel = (s32 - s16).abs() / s16;
    Ok((rel < 0.05, format!("s(16) = {s16:.6e}, s(32) = {s32:.6e}, relative change {rel:.1e}")))
}

fn brute_force() -> Outcome {
    let mut worst: f64 = 0.0;
    for sites in 2..=8 {
        for (m_phi, m_chi, g) in [(1.0, 1.0, 0.3), (1.0, 1.0, 0.05), (0.7, 1.3, 0.6), (1.5, 0.5, -0.4)] {
            let spec = LatticeSpec::new(1, sites, m_phi, m_chi, g)?;
            for a in [2, 3, 4] {
                let modes = renyi_field_entropy(&spec, a)?;
                for sub in [Subsystem::Phi, Subsystem::Chi] {
                    let dense = dense_renyi_entropy(&spec, a, sub)?;
                    worst = worst.max((dense - modes).abs() / modes);
                }
            }
        }
    }
    Ok((worst <= 1e-8, format!("max relative difference {worst:.1e} for L = 2..8")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("cutoff scaling", cutoff_scaling),
        ("alpha prefactor", alpha_prefactor),
        ("N linearity", n_linearity),
        ("dual path", dual_path),
        ("cancellation", cancellation),
        ("short range", short_range),
        ("SSB enhancement", ssb_enhancement),
        ("oracle order and prefactor", oracle_order),
        ("oracle volume law", oracle_volume),
        ("brute-force equivalence", brute_force),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<28} {}  {detail} [{:.1}s]",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
