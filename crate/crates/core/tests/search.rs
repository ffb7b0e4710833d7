use eslab_core::{g_naive, g_wheel, primes_up_to, search, Method, PrimeTable, SearchConfig};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// g(k) for k = 2..=30 from a separate brute-force program.
const G_TABLE: [u64; 29] = [
    6, 7, 7, 23, 62, 143, 44, 159, 46, 47, 174, 2239, 239, 719, 241, 5849, 2098, 2099, 43196, 14871, 19574, 35423,
    193049, 2105, 36287, 1119, 284, 240479, 58782,
];

fn table() -> PrimeTable {
    primes_up_to(1000).unwrap()
}

/// Exponent of p in n! by Legendre's formula.
fn legendre(mut n: u64, p: u64) -> u64 {
    let mut e = 0;
    while n > 0 {
        n /= p;
        e += n;
    }
    e
}

fn p_divides_binomial(n: u64, k: u64, p: u64) -> bool {
    legendre(n, p) > legendre(k, p) + legendre(n - k, p)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

#[test]
fn wheel_and_naive_match_table() {
    let t = table();
    for k in 2..=30u64 {
        let expected = G_TABLE[(k - 2) as usize];
        let cfg = SearchConfig::new(k, 1_000_000, Method::Naive);
        let naive = g_naive(&cfg, &t).unwrap();
        let wheel = g_wheel(&SearchConfig { method: Method::Wheel, ..cfg.clone() }, &t).unwrap();
        assert_eq!(naive.g, expected, "naive k={k}");
        assert_eq!(wheel.g, expected, "wheel k={k}");
        assert!(naive.verify() && wheel.verify(), "k={k}");
    }
}

#[test]
fn results_are_minimal() {
    let t = table();
    for k in 2..=20u64 {
        let r = search(&SearchConfig::new(k, 1_000_000, Method::Wheel), &t).unwrap();
        for n in (k + 2)..r.g {
            let blocked = t.up_to(k).iter().any(|&p| p_divides_binomial(n, k, p));
            assert!(blocked, "k={k}: n={n} is smaller than g={}", r.g);
        }
        assert!(t.up_to(k).iter().all(|&p| !p_divides_binomial(r.g, k, p)));
    }
}

#[test]
fn binomial_trial_division() {
    let t = table();
    for k in 2..=25u64 {
        let r = search(&SearchConfig::new(k, 1_000_000, Method::Wheel), &t).unwrap();
        let c = binomial(r.g, k);
        for &p in t.up_to(k) {
            assert!(!(&c % p).is_zero(), "k={k}: {p} divides C({}, {k})", r.g);
        }
    }
}

#[test]
fn certificates_cover_every_prime() {
    let t = table();
    for k in [5u64, 13, 24] {
        let r = search(&SearchConfig::new(k, 1_000_000, Method::Wheel), &t).unwrap();
        let ps: Vec<u64> = r.certificate.iter().map(|w| w.p).collect();
        assert_eq!(ps, t.up_to(k).to_vec());
    }
}

#[test]
fn k40_methods_agree_and_wheel_prunes() {
    let t = table();
    let naive = g_naive(&SearchConfig::new(40, 1_000_000, Method::Naive), &t).unwrap();
    let wheel = g_wheel(&SearchConfig::new(40, 1_000_000, Method::Wheel), &t).unwrap();
    assert_eq!(naive.g, 85741);
    assert_eq!(wheel.g, 85741);
    assert!(wheel.candidates_tested < naive.candidates_tested);
}

#[test]
fn worker_count_is_irrelevant() {
    let t = table();
    for k in [17u64, 23, 29] {
        let base = search(&SearchConfig::new(k, 1_000_000, Method::Wheel).workers(1), &t).unwrap();
        for w in [2, 3, 8] {
            let r = search(&SearchConfig::new(k, 1_000_000, Method::Wheel).workers(w), &t).unwrap();
            assert_eq!((r.g, r.candidates_tested), (base.g, base.candidates_tested), "k={k} workers={w}");
            assert_eq!(r.certificate, base.certificate);
        }
    }
}
