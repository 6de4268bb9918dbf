//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL` line (written straight to stderr so it shows even
//! when output capture is on).

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qburst::cycliccode::CyclicCode;
use qburst::galois::{Elem, Field, SelfDualBasis};
use qburst::notation::parse_generator;
use qburst::polyring::{divisor_generators, Polynomial};
use qburst::qccburst::{algorithm1, brute_force_limit, QccReport, QuantumCyclicCode, StabilizerTest, ORACLE_LIMIT};
use qburst::qetd::{classify, decode, lift_to_gf4, qetd_stats, Outcome};
use qburst::qrsburst::{algorithm2, image_expand, RsCode};
use qburst::search::{candidates, FieldChoice};

fn report(n: u32, ok: bool, elapsed: Duration, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let line = format!("criterion {n}: {verdict} ({:.1} s) {detail}\n", elapsed.as_secs_f64());
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn hermitian(n: usize, g: &str) -> QuantumCyclicCode {
    let f = Field::gf4();
    QuantumCyclicCode::hermitian(CyclicCode::from_generator(n, &parse_generator(g, &f).unwrap()).unwrap()).unwrap()
}

fn css(n: usize, g1: &str, g2: &str) -> QuantumCyclicCode {
    let f = Field::gf2();
    let c1 = CyclicCode::from_generator(n, &parse_generator(g1, &f).unwrap()).unwrap();
    let c2 = CyclicCode::from_generator(n, &parse_generator(g2, &f).unwrap()).unwrap();
    QuantumCyclicCode::css(c1, c2).unwrap()
}

/// Table I spot rows: (n, K, L, code).
fn table1_rows() -> Vec<(usize, usize, usize, QuantumCyclicCode)> {
    vec![
        (13, 1, 3, hermitian(13, "(1^6 2^5 3^3 2^1 1^0)")),
        (15, 3, 3, hermitian(15, "(1^6 2^3 1^0)")),
        (25, 5, 5, hermitian(25, "(1^10 2^5 1^0)")),
        (35, 7, 7, hermitian(35, "(1^14 3^7 1^0)")),
        (45, 9, 9, hermitian(45, "(1^18 2^9 1^0)")),
        (
            23,
            1,
            5,
            css(23, "(1^11 1^9 1^7 1^6 1^5 1^1 1^0)", "(1^11 1^9 1^7 1^6 1^5 1^1 1^0)"),
        ),
        (21, 9, 3, css(21, "(1^6 1^4 1^1 1^0)", "(1^6 1^4 1^2 1^1 1^0)")),
    ]
}

/// Table II rows: (n, K, L, ell0, code).
fn table2_rows() -> Vec<(usize, usize, usize, usize, QuantumCyclicCode)> {
    vec![
        (25, 1, 6, 5, hermitian(25, "(1^12 2^11 1^10 2^7 3^6 2^5 1^2 2^1 1^0)")),
        (
            29,
            1,
            7,
            6,
            hermitian(29, "(1^14 2^13 2^11 3^10 1^9 3^8 2^7 3^6 1^5 3^4 2^3 2^1 1^0)"),
        ),
        (
            37,
            1,
            9,
            8,
            hermitian(
                37,
                "(1^18 2^17 1^16 1^15 2^14 2^13 3^12 1^11 2^10 1^9 2^8 1^7 3^6 2^5 2^4 1^3 1^2 2^1 1^0)",
            ),
        ),
        (
            75,
            3,
            18,
            15,
            hermitian(75, "(1^36 2^33 1^30 2^21 3^18 2^15 1^6 2^3 1^0)"),
        ),
    ]
}

#[test]
fn criterion_1_table1_spot_checks() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for (n, k, l, code) in table1_rows() {
        let rep = algorithm1(&code);
        if (rep.n, rep.k, rep.l) != (n, k, l) {
            bad.push(format!("[[{n},{k}]] expected L={l}, got K={} L={}", rep.k, rep.l));
        }
    }
    let ok = bad.is_empty() && t.elapsed() < Duration::from_secs(10);
    report(1, ok, t.elapsed(), &bad.join("; "));
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_2_table2_degenerate_limits() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for (n, k, l, ell0, code) in table2_rows() {
        let rep = algorithm1(&code);
        if (rep.n, rep.k, rep.l, rep.ell0) != (n, k, l, ell0) {
            bad.push(format!(
                "[[{n},{k}]] expected ({l},{ell0}), got ({},{})",
                rep.l, rep.ell0
            ));
        }
    }
    let ok = bad.is_empty() && t.elapsed() < Duration::from_secs(60);
    report(2, ok, t.elapsed(), &bad.join("; "));
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_3_rs_image_limits() {
    let t = Instant::now();
    // (m, K, L, lower, qrb)
    let rows = [
        (4, 5, 8, 5, 10),
        (4, 1, 12, 9, 14),
        (5, 23, 7, 6, 10),
        (5, 1, 35, 31, 37),
        (6, 55, 8, 7, 12),
        (6, 53, 11, 7, 15),
        (6, 49, 17, 13, 21),
        (6, 47, 20, 19, 24),
    ];
    let mut bad = Vec::new();
    for (m, k, l, lower, qrb) in rows {
        let rep = algorithm2(&RsCode::new(m, k).unwrap());
        if (rep.l, rep.lower, rep.qrb_image) != (l, lower, qrb) {
            bad.push(format!(
                "m={m} K={k} expected ({l},{lower},{qrb}), got ({},{},{})",
                rep.l, rep.lower, rep.qrb_image
            ));
        }
    }
    let ok = bad.is_empty() && t.elapsed() < Duration::from_secs(300);
    report(3, ok, t.elapsed(), &bad.join("; "));
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_4_qetd_counts() {
    let t = Instant::now();
    // (code, N, N_D, N_0)
    let rows = [
        (hermitian(5, "(1^2 2^1 1^0)"), 51, 15, 15),
        (css(7, "(1^3 1^1 1^0)", "(1^3 1^1 1^0)"), 255, 72, 57),
        (hermitian(13, "(1^6 2^5 3^3 2^1 1^0)"), 25599, 7623, 2865),
        (hermitian(17, "(1^8 3^7 3^5 3^4 3^3 3^1 1^0)"), 507903, 145401, 41064),
    ];
    let mut bad = Vec::new();
    for (code, total, decoded, exact) in rows {
        let s = qetd_stats(&code, None, None).unwrap();
        if (s.total, s.decoded, s.exact) != (total, decoded, exact) {
            bad.push(format!(
                "[[{},{}]] expected ({total},{decoded},{exact}), got ({},{},{})",
                s.n, s.k, s.total, s.decoded, s.exact
            ));
        }
    }
    let ok = bad.is_empty() && t.elapsed() < Duration::from_secs(600);
    report(4, ok, t.elapsed(), &bad.join("; "));
    assert!(ok, "{bad:?}");
}

fn small_gf4_codes() -> Vec<QuantumCyclicCode> {
    (3..=15)
        .step_by(2)
        .flat_map(|n| candidates(n, FieldChoice::Gf4).unwrap())
        .collect()
}

#[test]
fn criterion_5_oracle_equivalence() {
    let t = Instant::now();
    let codes = small_gf4_codes();
    let mut bad = Vec::new();
    for code in &codes {
        let rep = algorithm1(code);
        let oracle = brute_force_limit(code, ORACLE_LIMIT).unwrap();
        if (rep.l, rep.ell0) != oracle {
            bad.push(format!(
                "[[{},{}]] {:?}: {:?} vs {:?}",
                rep.n,
                rep.k,
                rep.generators,
                (rep.l, rep.ell0),
                oracle
            ));
        }
    }
    let ok = bad.is_empty() && !codes.is_empty() && t.elapsed() < Duration::from_secs(600);
    report(
        5,
        ok,
        t.elapsed(),
        &format!("{} codes; {}", codes.len(), bad.join("; ")),
    );
    assert!(ok, "{bad:?}");
}

#[test]
fn criterion_6_qrb_invariant() {
    let t = Instant::now();
    let mut reports: Vec<QccReport> = Vec::new();
    reports.extend(table1_rows().iter().map(|r| algorithm1(&r.3)));
    reports.extend(table2_rows().iter().map(|r| algorithm1(&r.4)));
    reports.extend(small_gf4_codes().iter().map(algorithm1));
    for code in [
        hermitian(5, "(1^2 2^1 1^0)"),
        css(7, "(1^3 1^1 1^0)", "(1^3 1^1 1^0)"),
        hermitian(17, "(1^8 3^7 3^5 3^4 3^3 3^1 1^0)"),
    ] {
        reports.push(algorithm1(&code));
    }
    // randomized search below length 50
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut sampled = 0;
    for field in [FieldChoice::Gf2, FieldChoice::Gf4] {
        for n in (3..50).step_by(2) {
            let cands = candidates(n, field).unwrap();
            for code in cands.iter().filter(|_| rng.gen_bool(0.25)).take(6) {
                reports.push(algorithm1(code));
                sampled += 1;
            }
        }
    }
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| {
            let slack = r.n as i64 - r.k as i64 - 4 * r.l as i64;
            slack < 0 || r.delta != slack
        })
        .map(|r| format!("[[{},{}]] L={}", r.n, r.k, r.l))
        .collect();
    let ok = bad.is_empty();
    report(
        6,
        ok,
        t.elapsed(),
        &format!("{} reports ({sampled} random); {}", reports.len(), bad.join("; ")),
    );
    assert!(ok, "{bad:?}");
}

/// Random non-wrap quaternary burst of length `1..=max_len` with nonzero ends.
fn random_burst(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> (usize, Vec<Elem>) {
    let l = rng.gen_range(1..=max_len);
    let start = rng.gen_range(0..=n - l);
    let mut e = vec![0; n];
    for p in start..start + l {
        e[p] = rng.gen_range(0..4);
    }
    e[start] = rng.gen_range(1..4);
    e[start + l - 1] = rng.gen_range(1..4);
    (l, e)
}

#[test]
fn criterion_7_decoder_invariants() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let codes = [
        hermitian(5, "(1^2 2^1 1^0)"),
        css(7, "(1^3 1^1 1^0)", "(1^3 1^1 1^0)"),
        hermitian(13, "(1^6 2^5 3^3 2^1 1^0)"),
    ];
    let mut bad = Vec::new();
    for q in &codes {
        let limit = algorithm1(q).l;
        let c = match q {
            QuantumCyclicCode::Hermitian(c) => c.clone(),
            QuantumCyclicCode::Css(a, _) => lift_to_gf4(a).unwrap(),
        };
        let (n, r) = (c.n(), c.r());
        let stab = StabilizerTest::Hermitian(&c);
        let lmax = (n - q.quantum_k()) / 2;
        let (mut low_total, mut low_wrong) = (0, 0);
        for _ in 0..10_000 {
            let (l, e) = random_burst(&mut rng, n, lmax);
            let s = c.syndrome(&e).unwrap();
            let ehat = decode(&c, &s).unwrap();
            if c.syndrome(&ehat).unwrap() != s {
                bad.push(format!("n={n}: syndrome mismatch"));
            }
            let outcome = classify(&c, stab, &e, &ehat).unwrap();
            if l <= limit && outcome == Outcome::Failure {
                bad.push(format!("n={n}: failure on burst of length {l} <= L={limit}"));
            }
            // the same burst moved into the low-order stages
            if l <= r {
                let mut low = vec![0; n];
                let first = e.iter().position(|&x| x != 0).unwrap();
                low[..l].copy_from_slice(&e[first..first + l]);
                low_total += 1;
                let dec = decode(&c, &c.syndrome(&low).unwrap()).unwrap();
                if dec != low {
                    low_wrong += 1;
                }
            }
        }
        if low_wrong > 0 {
            bad.push(format!(
                "n={n}: {low_wrong}/{low_total} low-order bursts not decoded exactly"
            ));
        }
    }
    bad.dedup();
    let ok = bad.is_empty();
    report(7, ok, t.elapsed(), &bad.join("; "));
    assert!(ok, "{bad:?}");
}

fn algebra_failures() -> Vec<String> {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    // field axioms and Frobenius
    for m in 1..=8 {
        let f = Field::with_default_modulus(m).unwrap();
        let q = f.q() as Elem;
        for _ in 0..10_000 {
            let (a, b, c) = (rng.gen_range(0..q), rng.gen_range(0..q), rng.gen_range(0..q));
            let ok = f.add(a, b) == f.add(b, a)
                && f.mul(a, b) == f.mul(b, a)
                && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                && f.mul(a, 1) == a
                && (a == 0 || f.mul(a, f.inv(a).unwrap()) == 1)
                && f.square(f.add(a, b)) == f.add(f.square(a), f.square(b))
                && f.pow(a, f.q() as u64) == a;
            if !ok {
                bad.push(format!("GF(2^{m}) axioms at ({a},{b},{c})"));
                break;
            }
        }
    }
    // g h = x^n - 1 and H G^T = 0
    for (field, ns) in [
        (Field::gf2(), vec![7usize, 9, 15, 21, 23]),
        (Field::gf4(), vec![5, 9, 13, 15, 17]),
    ] {
        for n in ns {
            for g in divisor_generators(n, &field, 0, n).unwrap() {
                let c = CyclicCode::from_generator(n, &g).unwrap();
                if c.generator().mul(c.parity_polynomial()).unwrap() != Polynomial::xn_minus_1(&field, n) {
                    bad.push(format!("g h != x^{n} - 1"));
                }
                if c.r() > 0 && c.k() > 0 {
                    let p = c.parity_check_matrix().mul(&c.generator_matrix().transpose()).unwrap();
                    if !p.is_zero() {
                        bad.push(format!("H G^T != 0 for n={n}"));
                    }
                }
            }
        }
    }
    // self-dual bases
    for m in 1..=6 {
        let f = Field::with_default_modulus(m).unwrap();
        let mut bases = vec![SelfDualBasis::construct(&f, 0), SelfDualBasis::construct(&f, 99)];
        if m <= 4 {
            bases.extend(SelfDualBasis::enumerate_all(&f));
        }
        for b in &bases {
            let gram = b.gram();
            let identity = (0..m as usize).all(|i| (0..m as usize).all(|j| gram[i][j] == (i == j) as Elem));
            if !identity {
                bad.push(format!("Gram matrix of {:?} is not the identity", b.elements()));
            }
        }
    }
    // images of RS codewords: linearity and dual preservation
    for (m, k) in [(4u32, 5usize), (5, 23), (5, 1)] {
        let rs = RsCode::new(m, k).unwrap();
        let f: Arc<Field> = rs.field().clone();
        let q = f.q() as Elem;
        let g = rs.code.generator_matrix().transpose();
        let h = rs.code.parity_check_matrix().transpose();
        for _ in 0..1000 {
            let u: Vec<Elem> = (0..rs.k_c).map(|_| rng.gen_range(0..q)).collect();
            let w: Vec<Elem> = (0..rs.r()).map(|_| rng.gen_range(0..q)).collect();
            let c = g.mul_vec(&u).unwrap();
            let d = h.mul_vec(&w).unwrap();
            let (ic, id) = (image_expand(&c, &rs.basis), image_expand(&d, &rs.basis));
            let sum: Vec<Elem> = c.iter().zip(&d).map(|(a, b)| a ^ b).collect();
            let isum: Vec<u8> = ic.iter().zip(&id).map(|(a, b)| a ^ b).collect();
            if image_expand(&sum, &rs.basis) != isum {
                bad.push(format!("image not linear (m={m})"));
            }
            let inner = ic.iter().zip(&id).fold(0u8, |acc, (a, b)| acc ^ (a & b));
            if inner != 0 {
                bad.push(format!("image inner product nonzero (m={m}, K={k})"));
            }
        }
    }
    bad.dedup();
    bad
}

#[test]
fn criterion_8_algebra_suites() {
    let t = Instant::now();
    let bad = algebra_failures();
    let ok = bad.is_empty();
    report(8, ok, t.elapsed(), &bad.join("; "));
    assert!(ok, "{bad:?}");
}
