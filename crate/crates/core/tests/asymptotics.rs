use eslab_core::asymptotics::{
    antiderivative_check, chebyshev_weighted_sum, constant_c, convergence_table, integral_identity_check,
    lemma64_pieces, mertens_product, EULER_GAMMA,
};
use eslab_core::{decompose, primes_up_to, PrimeTable};

fn table() -> PrimeTable {
    primes_up_to(1_000_000).unwrap()
}

#[test]
fn small_and_middle_factor_bounds() {
    let t = table();
    for k in [1_000u64, 3_000, 10_000, 30_000, 100_000, 300_000, 1_000_000] {
        let d = decompose(k, &t).unwrap();
        let s = (k as f64).sqrt();
        assert!(d.log_f_small / s <= 4.0, "k={k}: {}", d.log_f_small / s);
        let llk = (k as f64).ln().ln();
        assert!(d.log_f1 / (s * llk) <= 5.0, "k={k}");
        assert!(d.log_f_small > 0.0 && d.log_f1 > 0.0);
    }
}

#[test]
fn pieces_partition_f0() {
    let t = table();
    for k in [1_000u64, 10_000, 100_000, 1_000_000] {
        let p = lemma64_pieces(k, &t).unwrap();
        let d = decompose(k, &t).unwrap();
        assert!(p.relative_gap() <= 1e-9, "k={k}");
        assert!((p.f0_direct - d.log_f0).abs() <= 1e-9 * d.log_f0);
    }
    let p = lemma64_pieces(1_000_000, &t).unwrap();
    let ratio = p.piece_logp / 1e6;
    assert!((0.9..=1.1).contains(&ratio), "{ratio}");
}

#[test]
fn pieces_brute_force_grouping() {
    let t = primes_up_to(10_000).unwrap();
    for k in [100u64, 500, 2_000, 10_000] {
        let p = lemma64_pieces(k, &t).unwrap();
        let cut = (k as f64).ln().powi(2);
        let (mut tail, mut logp, mut neg) = (0.0, 0.0, 0.0);
        for &q in t.up_to(k) {
            if q * q <= k {
                continue;
            }
            let a = k / q;
            let lp = (q as f64).ln();
            let ln_rest = (((a + 1) * q - k) as f64).ln();
            if (a as f64) >= cut {
                tail += lp - ln_rest;
            } else {
                logp += lp;
                neg -= ln_rest;
            }
        }
        assert!((p.piece_tail - tail).abs() <= 1e-9 * tail.abs().max(1.0), "k={k}");
        assert!((p.piece_logp - logp).abs() <= 1e-9 * logp, "k={k}");
        assert!((p.piece_neg - neg).abs() <= 1e-9 * neg.abs().max(1.0), "k={k}");
    }
}

#[test]
fn quadrature_matches_closed_form() {
    for a in 1..=1000u64 {
        let c = integral_identity_check(a).unwrap();
        assert!(c.error() < 1e-8, "a={a}: {}", c.error());
    }
}

#[test]
fn antiderivative_grid() {
    // The central difference carries an error near h²/(6(u−1)²), so the grid
    // stays at u − 1 ≥ 1e-3.
    for a in [1u64, 2, 3, 5, 10, 100, 1000] {
        let width = 1.0 / a as f64;
        for j in 0..=20 {
            let v = 1e-3 + (width - 1e-3) * j as f64 / 20.0;
            let u = 1.0 + v;
            let res = antiderivative_check(a, u).unwrap();
            assert!(res < 1e-6, "a={a} u={u}: {res}");
        }
    }
}

#[test]
fn analytic_diagnostics() {
    let t = table();
    let psi = chebyshev_weighted_sum(1_000_000, &t).unwrap() / 1e6;
    assert!((0.95..=1.05).contains(&psi), "{psi}");
    let eg = EULER_GAMMA.exp();
    // Approaches e^γ from above.
    let mut prev = f64::INFINITY;
    for x in [1_000u64, 10_000, 100_000, 1_000_000] {
        let m = mertens_product(x, &t).unwrap() / (x as f64).ln();
        assert!(m > eg && m < prev, "x={x}: {m}");
        prev = m;
    }
    assert!((prev - 1.7811417713726307).abs() < 1e-9);
    assert!((prev - eg).abs() <= 0.01 * eg);
}

#[test]
fn convergence_moves_toward_c() {
    let t = table();
    let c = constant_c(1e-12).unwrap().value_f64();
    let rows = convergence_table(&[1_000, 10_000, 100_000, 1_000_000], &t).unwrap();
    let gaps: Vec<f64> = rows.iter().map(|r| (r.normalized - c).abs()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    assert!((rows[3].normalized - 0.8755234).abs() < 1e-6);
}
