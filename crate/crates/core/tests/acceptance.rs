//! Acceptance suite: thirteen end-to-end guarantees, one test (and one
//! printed pass line) each. Run with `--nocapture` to see the lines.

use gaplab::codes::{bch_generator, code_distance, lsdc_build, lsdc_density_estimate, LinearCode};
use gaplab::galois::{c_set, field_make};
use gaplab::lattices::{
    bch_center_sample, bch_lattice_build, bch_syndrome_buckets, count_vectors,
    intermediate_lattice, final_lattice, min_admissible_eta, nvp_to_svp, RelaxedScale,
    SvpGadgetParams,
};
use gaplab::matspace::{norm, rank, tensor_generator, FieldMatrix, IntMatrix, NormSpec};
use gaplab::oracles::{lds_oracle, mdp_oracle, mld_oracle, nvp_verdict, MdpMode};
use gaplab::pipeline::{emit_report, run_pipeline, PipelineSpec, ReportFormat};
use gaplab::problems::{
    gen_planted, GapInstance, LdsInstance, MldInstance, NvpInstance, PlantSpec, Witness,
};
use gaplab::reductions::{lds_color, lds_to_mld, mld_to_oddset, mld_to_snc, SncToMdp};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

const BUDGET: u64 = u64::MAX;

fn pass(n: u32, msg: &str) {
    println!("criterion {n:02}: PASS - {msg}");
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

#[test]
fn a01_bch_code_parameters() {
    let c = bch_generator(15, 5).unwrap();
    assert_eq!(c.length(), 15);
    assert!(c.dim() >= 7, "BCH(15,5) dim {}", c.dim());
    assert_eq!(code_distance(&c, BUDGET).unwrap(), 5);
    let hamming = bch_generator(7, 3).unwrap();
    assert_eq!((hamming.length(), hamming.dim()), (7, 4));
    assert_eq!(code_distance(&hamming, BUDGET).unwrap(), 3);
    pass(1, "BCH(15,5) has dim >= 7 and exact distance 5; BCH(7,3) is the [7,4,3] Hamming code");
}

fn random_binary_code(rng: &mut ChaCha8Rng, n: usize, k: usize) -> LinearCode {
    let f2 = field_make(2, 1).unwrap();
    loop {
        let mut g = FieldMatrix::zeros(f2.clone(), n, k);
        for i in 0..n {
            for j in 0..k {
                g.set(i, j, rng.gen_range(0..2));
            }
        }
        if rank(&g) == k {
            return LinearCode::new(g);
        }
    }
}

#[test]
fn a02_tensor_distance_multiplicative() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA2);
    for _ in 0..50 {
        let k1 = rng.gen_range(2..=4usize);
        let k2 = rng.gen_range(2..=5usize);
        let n1 = rng.gen_range(k1 + 1..=8);
        let n2 = rng.gen_range(k2 + 1..=8);
        let c1 = random_binary_code(&mut rng, n1, k1);
        let c2 = random_binary_code(&mut rng, n2, k2);
        let d1 = code_distance(&c1, BUDGET).unwrap();
        let d2 = code_distance(&c2, BUDGET).unwrap();
        let tg = tensor_generator(&c1.generator, &c2.generator).unwrap();
        let dt = code_distance(&LinearCode::new(tg), BUDGET).unwrap();
        assert_eq!(dt, d1 * d2, "[{n1},{k1}] x [{n2},{k2}]");
    }
    let secs = t0.elapsed().as_secs();
    assert!(secs < 60);
    pass(2, &format!("50 random tensor products have exact distance d1*d2 ({secs} s)"));
}

#[test]
fn a03_suffix_density_floor() {
    let lsdc = lsdc_build(4, 3, None).unwrap();
    assert_eq!(lsdc.params.h, 63);
    assert!(!lsdc.params.toy);
    let delta = 3f64.powf(-1.5);
    let sigma = (delta * (1.0 - delta) / 10_000.0).sqrt();
    for prefix in 0..16u32 {
        let x: Vec<u8> = (0..4).map(|i| ((prefix >> i) & 1) as u8).collect();
        let dens =
            lsdc_density_estimate(&lsdc, &x, lsdc.params.r, 10_000, 0xA300 + prefix as u64)
                .unwrap();
        let f = *dens.numer() as f64 / *dens.denom() as f64;
        assert!(f >= delta - 3.0 * sigma, "prefix {prefix:04b}: density {f:.4}");
    }
    pass(3, "(4,3)-LSDC at h=63: every prefix hits with frequency >= 3^(-3/2) - 3 sigma");
}

#[test]
fn a04_vandermonde_independence() {
    for q in [5u64, 7, 11, 13] {
        let field = field_make(q, 1).unwrap();
        // degree-c moment vectors (1, u, ..., u^(c-2)) live in dimension c-1:
        // every subset has full rank min(size, c-1)
        for c in 2..=4usize {
            let dim = c - 1;
            let vecs: Vec<Vec<u64>> = (0..q)
                .map(|u| (0..dim).map(|e| field.pow(u, e as u64)).collect())
                .collect();
            for size in 1..=c {
                for sub in subsets(q as usize, size) {
                    let rows: Vec<Vec<u64>> =
                        sub.iter().map(|&i| vecs[i].clone()).collect();
                    let m = FieldMatrix::from_rows(field.clone(), &rows).unwrap();
                    assert_eq!(rank(&m), size.min(dim), "q={q} c={c} sub={sub:?}");
                }
            }
        }
    }
    pass(4, "moment vectors over F_q, q in {5,7,11,13}: every subset exhaustively checked for rank min(|S|, s-1)");
}

/// ceil(10 d^(d/2)) computed exactly as ceil(sqrt(100 d^d)).
fn seeds_for(d: u64) -> u64 {
    let target = 100u128 * (d as u128).pow(d as u32);
    let mut s = (target as f64).sqrt() as u128;
    while s * s < target {
        s += 1;
    }
    while s > 1 && (s - 1) * (s - 1) >= target {
        s -= 1;
    }
    s as u64
}

fn chain(lds: &LdsInstance, toy_h: u64) -> SncToMdp {
    let (colored, _) = lds_color(lds, BUDGET).unwrap();
    let (mld, _) = lds_to_mld(&colored, BUDGET).unwrap();
    let (snc, _) = mld_to_snc(&mld, Ratio::from_integer(3)).unwrap();
    SncToMdp::new(&snc, Some(toy_h)).unwrap()
}

fn sweep(red: &SncToMdp, n_seeds: u64) -> u64 {
    let mut ok = 0;
    for seed in 0..n_seeds {
        let mdp = red.run_bare(seed);
        if !mdp_oracle(&mdp, red.k_out, MdpMode::Primal, BUDGET)
            .unwrap()
            .is_above_bound()
        {
            ok += 1;
        }
    }
    ok
}

#[test]
fn a05_chain_success_rates() {
    let t0 = Instant::now();
    // 100 planted-YES instances: 50 at k=1 (toy LSDC h=15), 47 at k=3 and
    // 3 at k=4 (h=31); seed counts scale as ceil(10 d^(d/2)) per instance
    let mut yes: Vec<(PlantSpec, u64)> = Vec::new();
    for i in 0..40u64 {
        yes.push((PlantSpec::Lds { p: 2, d: 1, m: 4, k: 1, extra: (i % 5) as usize }, 15));
    }
    for i in 0..10u64 {
        yes.push((PlantSpec::Lds { p: 2, d: 2, m: 2, k: 1, extra: (i % 2) as usize }, 15));
    }
    for _ in 0..47 {
        yes.push((PlantSpec::Lds { p: 2, d: 1, m: 3, k: 3, extra: 0 }, 31));
    }
    for _ in 0..3 {
        yes.push((PlantSpec::Lds { p: 2, d: 1, m: 4, k: 4, extra: 0 }, 31));
    }
    assert_eq!(yes.len(), 100);
    for (i, (spec, toy_h)) in yes.iter().enumerate() {
        let (inst, _) = gen_planted(spec, 0xA500 + i as u64).unwrap();
        let GapInstance::Lds(lds) = inst else { panic!() };
        assert!(lds.w.len() <= 12 && lds.k <= 4);
        let red = chain(&lds, *toy_h);
        let n = seeds_for(red.d);
        let ok = sweep(&red, n);
        let delta = red.lsdc.params.delta;
        let sigma = (delta * (1.0 - delta) / n as f64).sqrt();
        assert!(
            ok as f64 / n as f64 >= delta - 3.0 * sigma,
            "yes instance {i}: {ok}/{n} below {delta} - 3 sigma"
        );
    }

    // 50 certified-NO inputs: every seed must stay above the decoding bound
    let f2 = field_make(2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA5F);
    let mut no: Vec<(LdsInstance, u64)> = Vec::new();
    while no.len() < 42 {
        // k = 1: distinct nonzero vectors with no dependent subset of size <= 3
        let w: Vec<Vec<u64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.gen_range(0..2u64)).collect())
            .collect();
        if w.iter().any(|v| v.iter().all(|&e| e == 0)) {
            continue;
        }
        let inst = LdsInstance { field: f2.clone(), w, k: 1, witness: None };
        if lds_oracle(&inst, 3, BUDGET).unwrap().is_above_bound() {
            no.push((inst, 15));
        }
    }
    while no.len() < 50 {
        // k = 3: three independent vectors admit no dependency at all
        let w: Vec<Vec<u64>> = (0..3)
            .map(|_| (0..4).map(|_| rng.gen_range(0..2u64)).collect())
            .collect();
        let inst = LdsInstance { field: f2.clone(), w, k: 3, witness: None };
        if lds_oracle(&inst, 9, BUDGET).unwrap().is_above_bound() {
            no.push((inst, 31));
        }
    }
    for (i, (inst, toy_h)) in no.iter().enumerate() {
        let red = chain(inst, *toy_h);
        let n = seeds_for(red.d);
        let ok = sweep(&red, n);
        assert_eq!(ok, 0, "no instance {i}: {ok}/{n} seeds fell below the bound");
    }

    let secs = t0.elapsed().as_secs();
    assert!(secs < 1800, "{secs} s exceeds the 30 minute budget");
    pass(5, &format!("100 YES chains beat delta - 3 sigma and 50 NO chains never decode ({secs} s)"));
}

#[test]
fn a06_coordinate_set_property() {
    let fields: [(u64, usize); 15] = [
        (2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2),
        (7, 1), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1),
    ];
    for (p, d) in fields {
        let f = field_make(p, d).unwrap();
        for i in 1..=d {
            for alpha in 1..p {
                let c = c_set(&f, i, alpha).unwrap();
                for size in 1..=c.len().min(5) {
                    for sub in subsets(c.len(), size) {
                        // odometer over nonzero prime-subfield coefficients
                        let mut coeffs = vec![1u64; size];
                        loop {
                            let scalar_sum = coeffs.iter().fold(0, |acc, &b| (acc + b) % p);
                            if scalar_sum != 0 {
                                let mut s = 0u64;
                                for (&b, &idx) in coeffs.iter().zip(&sub) {
                                    s = f.add(s, f.mul(b, c[idx]));
                                }
                                assert_ne!(
                                    s, 0,
                                    "F_{p}^{d}, C_({i},{alpha}), subset {sub:?}, coeffs {coeffs:?}"
                                );
                            }
                            let mut pos = 0;
                            while pos < size {
                                coeffs[pos] += 1;
                                if coeffs[pos] < p {
                                    break;
                                }
                                coeffs[pos] = 1;
                                pos += 1;
                            }
                            if pos == size {
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
    pass(6, "coordinate sets over all fields of size <= 27: no vanishing combination with nonzero coefficient sum (subsets <= 5)");
}

#[test]
fn a07_nvp_objective_identity() {
    let f5 = field_make(5, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA7);
    for p in 1..=3u32 {
        for n in 1..=3usize {
            for m in 1..=3usize {
                let rows: Vec<Vec<u64>> = (0..n)
                    .map(|_| (0..m).map(|_| rng.gen_range(0..5)).collect())
                    .collect();
                let a_mat = FieldMatrix::from_rows(f5.clone(), &rows).unwrap();
                let y: Vec<u64> = (0..n).map(|_| rng.gen_range(0..5)).collect();
                let k = rng.gen_range(1..=m.min(2)) as u64;
                let inst = MldInstance { a: a_mat, y: y.clone(), k, witness: None };
                let (nvp, _) = gaplab::lattices::mld_to_nvp(&inst, 2, p).unwrap();
                let a_copies = (2 * 2 * k + 2) as i64;
                assert_eq!(nvp.basis.cols, m + n);
                let bi: Vec<Vec<i64>> = (0..nvp.basis.rows)
                    .map(|i| {
                        (0..nvp.basis.cols)
                            .map(|j| nvp.basis.get(i, j).to_i64().unwrap())
                            .collect()
                    })
                    .collect();
                let yi: Vec<i64> =
                    nvp.target.iter().map(|v| v.to_i64().unwrap()).collect();
                let mut v = vec![-3i64; m + n];
                loop {
                    let bv: Vec<i64> = bi
                        .iter()
                        .map(|r| r.iter().zip(&v).map(|(a, b)| a * b).sum())
                        .collect();
                    for w in -3i64..=3 {
                        let lhs: i64 = bv
                            .iter()
                            .zip(&yi)
                            .map(|(c, t)| (c - w * t).abs().pow(p))
                            .sum();
                        let mut rhs = 0i64;
                        for i in 0..n {
                            let ri = (0..m).map(|j| rows[i][j] as i64 * v[j]).sum::<i64>()
                                + 5 * v[m + i]
                                - w * y[i] as i64;
                            rhs += a_copies * ri.abs().pow(p);
                        }
                        rhs += v[..m].iter().map(|x| x.abs().pow(p)).sum::<i64>();
                        rhs += k as i64 * w.abs().pow(p);
                        assert_eq!(lhs, rhs, "p={p} n={n} m={m} v={v:?} w={w}");
                    }
                    let mut pos = 0;
                    while pos < m + n {
                        v[pos] += 1;
                        if v[pos] <= 3 {
                            break;
                        }
                        v[pos] = -3;
                        pos += 1;
                    }
                    if pos == m + n {
                        break;
                    }
                }
            }
        }
    }
    pass(7, "MLD-to-NVP objective identity holds exhaustively for x,z,w in [-3,3], n,m <= 3, p in {1,2,3}");
}

#[test]
fn a08_center_hit_average() {
    let lat = bch_lattice_build(15, 4).unwrap();
    let buckets = bch_syndrome_buckets(&lat, 3, BUDGET).unwrap();
    assert_eq!(buckets.len(), 256);
    let total: u64 = buckets.iter().sum();
    assert_eq!(total, 455); // C(15,3)
    assert_eq!(Ratio::new(total, buckets.len() as u64), Ratio::new(455u64, 256));
    // sampled centers report exactly their bucket's count: a hit w has
    // syn(w) = v, i.e. the error e = w - u falls in bucket v xor syn(u)
    for seed in 0..5 {
        let s = bch_center_sample(&lat, 3, seed, Some(BUDGET)).unwrap();
        let su = lat.syndrome(&s.u);
        let idx: usize = s
            .v
            .iter()
            .zip(&su)
            .enumerate()
            .map(|(i, (&a, &b))| (((a ^ b) & 1) as usize) << i)
            .sum();
        assert_eq!(s.hits.unwrap(), buckets[idx]);
    }
    pass(8, "BCH(15, l=4) centers at radius 3 average exactly C(15,3)/2^8 = 455/256 hits");
}

/// A toy NO instance for the homogenized nearest-vector promise: the target
/// sits at distance 2 from 5Z and the zero row charges |w|^2, so
/// |5x - w y|^2 + |w|^2 > 2 for every multiplier w != 0.
fn toy_no_nvp(i: u64) -> NvpInstance {
    NvpInstance {
        basis: IntMatrix::from_rows(&[vec![5], vec![0]]).unwrap(),
        target: vec![BigInt::from(5 * i + 2 + (i % 2)), BigInt::one()],
        k: 2,
        norm: NormSpec::LpPow(2),
        witness: None,
    }
}

#[test]
fn a09_bad_vectors_all_even() {
    let params = SvpGadgetParams::new(2, 2, 2).unwrap();
    assert_eq!((params.l, params.r), (4, 5));
    let bch = bch_lattice_build(15, params.l).unwrap();
    let threshold = BigRational::from_integer(BigInt::from(params.l));
    for i in 0..20u64 {
        let inst = toy_no_nvp(i);
        assert!(nvp_verdict(&inst, true, BUDGET).unwrap().is_above_bound());
        let sample = bch_center_sample(&bch, params.r, 0xA900 + i, None).unwrap();
        let b_int = intermediate_lattice(&inst, &params, Some((&bch, &sample.s))).unwrap();
        let vc = count_vectors(&b_int, &threshold, params.p, false, BUDGET).unwrap();
        assert!(vc.count > 0, "instance {i}: no short vectors at all");
        assert!(vc.all_even, "instance {i}: odd short vector survives");
    }
    pass(9, "20 certified-NO intermediate lattices: every vector of norm <= l has all-even coordinates");
}

#[test]
fn a10_random_constraint_survival() {
    let params = SvpGadgetParams::new(2, 2, 2).unwrap();
    let bch = bch_lattice_build(15, params.l).unwrap();
    let threshold = BigRational::from_integer(BigInt::from(params.l));

    // NO side: how often does a bad (short, all-even) vector survive the
    // random modular constraint?
    let inst = toy_no_nvp(0);
    let sample = bch_center_sample(&bch, params.r, 0xAA00, None).unwrap();
    let b_int = intermediate_lattice(&inst, &params, Some((&bch, &sample.s))).unwrap();
    let bad = count_vectors(&b_int, &threshold, params.p, true, BUDGET).unwrap();
    let n_a = bad.count;
    assert!(n_a > 0);
    let n_g = BigInt::from(1_000_000u64);
    let trials = 200u64;
    let mut survived = 0u64;
    let mut p_bar = 0f64;
    for seed in 0..trials {
        let (_, info) = final_lattice(&b_int, &params, &n_g, 0xAB00 + seed).unwrap();
        let rho_f = info.rho.to_f64().unwrap();
        p_bar += (n_a as f64 / rho_f).min(1.0);
        let any = bad.vectors.iter().any(|u| {
            let dot: BigInt = info.r_vec.iter().zip(u).map(|(r, a)| r * a).sum();
            (dot % &info.rho).is_zero()
        });
        if any {
            survived += 1;
        }
    }
    p_bar /= trials as f64;
    let f = survived as f64 / trials as f64;
    let sigma = (p_bar * (1.0 - p_bar) / trials as f64).sqrt();
    assert!(f <= p_bar + 3.0 * sigma, "survival {f:.3} vs bound {p_bar:.3} + 3 sigma");

    // YES side: the forwarded witness must survive on a positive fraction of
    // seeds (small N_g keeps rho small enough to observe it)
    let yes = NvpInstance {
        basis: IntMatrix::from_rows(&[vec![5]]).unwrap(),
        target: vec![BigInt::from(5)],
        k: 2,
        norm: NormSpec::LpPow(2),
        witness: Some(Witness::Integral { x: vec![BigInt::one()] }),
    };
    let relaxed = RelaxedScale { h: 15, n_g: BigInt::from(10_000u64), hit_budget: BUDGET };
    let mut forwarded = 0u64;
    for seed in 0..trials {
        let (svp, tr) = nvp_to_svp(&yes, 2, seed, Some(&relaxed)).unwrap();
        if tr.witness_forwarded {
            forwarded += 1;
            let Some(Witness::Integral { x }) = &svp.witness else { panic!() };
            let v = svp.basis.mul_vec(x).unwrap();
            let nrm = BigRational::from_integer(norm(&v, &svp.norm));
            assert!(!norm(&v, &svp.norm).is_zero() && nrm <= svp.k);
        }
    }
    assert!(forwarded > 0);
    pass(10, &format!(
        "bad-vector survival {survived}/{trials} within N_a/rho + 3 sigma; YES forwarding rate {forwarded}/{trials}"
    ));
}

#[test]
fn a11_odd_set_thresholds() {
    let f2 = field_make(2, 1).unwrap();
    let gamma = Ratio::from_integer(2u64);
    let gamma_prime = Ratio::from_integer(3u64);
    let odd_as_mld = |a: &FieldMatrix, k: u64| MldInstance {
        a: a.clone(),
        y: vec![1; a.rows],
        k,
        witness: None,
    };

    for i in 0..50u64 {
        let (inst, _) = gen_planted(&PlantSpec::Mld { p: 2, n: 8, m: 6, k: 2 }, 0xAB50 + i).unwrap();
        let GapInstance::Mld(mld) = inst else { panic!() };
        let (odd, tr) = mld_to_oddset(&mld, gamma, gamma_prime).unwrap();
        assert!(tr.witness_forwarded);
        let verdict = mld_oracle(&odd_as_mld(&odd.a, odd.k), odd.k, true, BUDGET).unwrap();
        assert!(verdict.optimum.is_some_and(|o| o <= mld.k + 1), "yes {i}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xABF);
    let k = 2u64;
    let mut done = 0;
    while done < 50 {
        let rows: Vec<Vec<u64>> = (0..14)
            .map(|_| (0..6).map(|_| rng.gen_range(0..2u64)).collect())
            .collect();
        let a = FieldMatrix::from_rows(f2.clone(), &rows).unwrap();
        let y: Vec<u64> = if done % 2 == 0 {
            a.mul_vec(&[1, 1, 1, 1, 1, 1]).unwrap() // far solution if unique
        } else {
            (0..14).map(|_| rng.gen_range(0..2u64)).collect()
        };
        let mld = MldInstance { a: a.clone(), y, k, witness: None };
        // NO promise: optimum > 2(k+1) - 1, so every odd-set solution (which
        // costs one extra coordinate) lands strictly above 2(k+1)
        if !mld_oracle(&mld, 2 * (k + 1) - 1, true, BUDGET).unwrap().is_above_bound() {
            continue;
        }
        let (odd, _) = mld_to_oddset(&mld, gamma, gamma_prime).unwrap();
        let verdict = mld_oracle(&odd_as_mld(&odd.a, odd.k), 2 * odd.k, true, BUDGET).unwrap();
        assert!(verdict.is_above_bound(), "no {done}");
        done += 1;
    }
    pass(11, "odd-set verdicts: 50 planted YES at weight <= k+1, 50 certified NO above 2(k+1)");
}

#[test]
fn a12_gamma_admissibility_table() {
    assert_eq!(min_admissible_eta(2), 21);
    assert_eq!(min_admissible_eta(3), 25);
    assert_eq!(min_admissible_eta(4), 39);
    let g = SvpGadgetParams::new(2, 25, 4).unwrap();
    assert_eq!(g.gamma_p, BigRational::new(BigInt::from(20), BigInt::from(19)));
    assert!(g.gamma_admissible());
    assert!(!SvpGadgetParams::new(2, 20, 4).unwrap().gamma_admissible());

    let inst = NvpInstance {
        basis: IntMatrix::identity(1),
        target: vec![BigInt::zero()],
        k: 4,
        norm: NormSpec::LpPow(2),
        witness: None,
    };
    // strict mode: inadmissible eta is a validation error, admissible eta
    // surfaces the infeasible gadget length
    assert_eq!(nvp_to_svp(&inst, 20, 0, None).unwrap_err().exit_code(), 2);
    assert_eq!(nvp_to_svp(&inst, 21, 0, None).unwrap_err().exit_code(), 4);
    pass(12, "gamma_p admissibility: min eta = 21/25/39 for p = 2/3/4, gamma_2(25) = 20/19, strict mode rejects eta = 20");
}

#[test]
fn a13_pipeline_determinism() {
    let spec: PipelineSpec = serde_json::from_str(
        r#"{
            "input": { "source": "plant",
                       "plant": { "kind": "lds", "p": 2, "d": 1, "m": 3, "k": 3, "extra": 1 } },
            "stages": [
                { "op": "lds_color" },
                { "op": "lds_to_mld" },
                { "op": "mld_to_snc", "gamma_num": 3 },
                { "op": "snc_to_mdp", "toy_h": 31 }
            ],
            "oracle_budget": 16777216
        }"#,
    )
    .unwrap();
    let j1 = emit_report(&run_pipeline(&spec, 7).unwrap(), ReportFormat::Json).unwrap();
    let j2 = emit_report(&run_pipeline(&spec, 7).unwrap(), ReportFormat::Json).unwrap();
    assert_eq!(j1, j2, "same master seed must give byte-identical reports");
    let j3 = emit_report(&run_pipeline(&spec, 8).unwrap(), ReportFormat::Json).unwrap();
    assert_ne!(j1, j3);
    pass(13, "pipeline reports are byte-identical across reruns with the same master seed");
}
