//! Lattice-side reductions: integer lifting from decoding to the nearest
//! vector problem, the BCH lattice gadget with its center sampler, the
//! intermediate and final lattices, and the composed NVP → SVP reduction.
//! Strict-scale parameters are astronomically large by design; strict mode
//! only reports them symbolically, while relaxed mode materializes
//! desk-scale stand-ins for exhaustive certification.

use crate::codes::bch_generator;
use crate::error::{Error, Result};
use crate::matspace::{norm, FieldMatrix, IntMatrix, LatticeSolver, NormSpec};
use crate::pipeline::derive_seed;
use crate::problems::{MldInstance, NvpInstance, SvpInstance, Witness};
use crate::reductions::{digest_json, enumerate_subsets, ReductionTrace};
use num_bigint::{BigInt, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map};

/// Parameter bundle for the NVP → SVP gadget.
#[derive(Clone, Debug, Serialize)]
pub struct SvpGadgetParams {
    pub p: u32,
    pub eta: u64,
    pub t: u64,
    /// l = eta * t, required even.
    pub l: u64,
    /// r = (1/2 + 1/2^p + 1/eta) * l, required integral.
    pub r: u64,
    /// gamma_p = 1 / (1/2 + (2^p + 1)/eta + 1/2^p); admissible iff > 1.
    pub gamma_p: BigRational,
}

impl SvpGadgetParams {
    pub fn new(p: u32, eta: u64, t: u64) -> Result<Self> {
        if p == 0 || eta == 0 || t == 0 {
            return Err(Error::validation("gadget params: p, eta, t >= 1"));
        }
        let l = eta * t;
        if l % 2 != 0 {
            return Err(Error::validation(format!("gadget params: l = {l} must be even")));
        }
        let two_p = BigRational::from_integer(BigInt::from(2).pow(p));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let r_ratio = (half.clone() + two_p.recip()
            + BigRational::new(BigInt::one(), BigInt::from(eta)))
            * BigRational::from_integer(BigInt::from(l));
        if !r_ratio.is_integer() {
            return Err(Error::validation(format!(
                "gadget params: r = {r_ratio} is not integral"
            )));
        }
        let r = r_ratio.to_integer().to_u64().unwrap();
        let gamma_p = (half
            + (two_p.clone() + BigRational::one())
                / BigRational::from_integer(BigInt::from(eta))
            + two_p.recip())
        .recip();
        Ok(SvpGadgetParams { p, eta, t, l, r, gamma_p })
    }

    pub fn gamma_admissible(&self) -> bool {
        self.gamma_p > BigRational::one()
    }

    /// SVP threshold `gamma_p^{-1} * l` (equals `2^p t + r`).
    pub fn k_svp(&self) -> BigRational {
        self.gamma_p.clone().recip() * BigRational::from_integer(BigInt::from(self.l))
    }

    /// Good-vector count floor `h^r / (200 h^{l/2} l^l)`, symbolic.
    pub fn n_g(&self, h: &BigInt) -> BigRational {
        let num = h.pow(self.r as u32);
        let den = BigInt::from(200)
            * h.pow((self.l / 2) as u32)
            * BigInt::from(self.l).pow(self.l as u32);
        BigRational::new(num, den)
    }

    /// Bad-vector count ceiling `10^{-5} * n_g`, symbolic.
    pub fn n_a(&self, h: &BigInt) -> BigRational {
        self.n_g(h) / BigRational::from_integer(BigInt::from(100_000))
    }
}

/// Smallest eta making gamma_p exceed 1 for the given p.
pub fn min_admissible_eta(p: u32) -> u64 {
    let mut eta = 1;
    loop {
        // gamma check only; ignore the l/r integrality that depends on t
        let two_p = BigRational::from_integer(BigInt::from(2).pow(p));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let denom = half
            + (two_p.clone() + BigRational::one())
                / BigRational::from_integer(BigInt::from(eta))
            + two_p.recip();
        if denom < BigRational::one() {
            return eta;
        }
        eta += 1;
    }
}

/// MLD over a prime field F_q → NVP in the l_p norm: `a = 2*eta*k + 2`
/// stacked copies of `[A | q Id_n]` kill the modular structure, an `Id_m`
/// block charges `||x||`, and `k` zero rows charge the homogenizing
/// multiplier; k' = 2k.
pub fn mld_to_nvp(
    inst: &MldInstance,
    eta: u64,
    p: u32,
) -> Result<(NvpInstance, ReductionTrace)> {
    let field = &inst.a.spec;
    if field.d != 1 {
        return Err(Error::validation("mld_to_nvp: prime fields only"));
    }
    let q = field.p;
    if q <= 2 * eta {
        return Err(Error::validation(format!(
            "mld_to_nvp: need prime q = {q} > 2*eta = {}",
            2 * eta
        )));
    }
    if p == 0 {
        return Err(Error::validation("mld_to_nvp: p >= 1"));
    }
    let (n, m, k) = (inst.a.rows, inst.a.cols, inst.k);
    let a = 2 * eta * k + 2;
    let rows = a as usize * n + m + k as usize;
    let mut basis = IntMatrix::zeros(rows, m + n);
    let mut target = vec![BigInt::zero(); rows];
    for copy in 0..a as usize {
        for i in 0..n {
            let row = copy * n + i;
            for j in 0..m {
                basis.set(row, j, BigInt::from(inst.a.get(i, j)));
            }
            basis.set(row, m + i, BigInt::from(q));
            target[row] = BigInt::from(inst.y[i]);
        }
    }
    for j in 0..m {
        basis.set(a as usize * n + j, j, BigInt::one());
    }
    for i in 0..k as usize {
        target[a as usize * n + m + i] = BigInt::one();
    }

    // forward x as x ∘ z with A x + q z = y over the integers
    let witness = match &inst.witness {
        Some(Witness::Binary { x }) if x.len() == m => {
            let mut coeffs: Vec<BigInt> = x.iter().map(|&b| BigInt::from(b)).collect();
            for i in 0..n {
                let ax: i64 = (0..m)
                    .map(|j| inst.a.get(i, j) as i64 * x[j] as i64)
                    .sum();
                let diff = BigInt::from(inst.y[i] as i64 - ax);
                debug_assert!((&diff % q).is_zero());
                coeffs.push(diff / q);
            }
            Some(Witness::Integral { x: coeffs })
        }
        _ => None,
    };
    let out = NvpInstance {
        basis,
        target,
        k: 2 * k,
        norm: NormSpec::LpPow(p),
        witness: witness.clone(),
    };
    let mut params = Map::new();
    params.insert("a".into(), json!(a));
    params.insert("q".into(), json!(q));
    params.insert("eta".into(), json!(eta));
    params.insert("p".into(), json!(p));
    let tr = ReductionTrace {
        stage: "mld_to_nvp".into(),
        input_digest: digest_json(inst),
        output_digest: digest_json(&out),
        seed: None,
        k_in: k,
        k_out: 2 * k,
        params,
        witness_forwarded: witness.is_some(),
    };
    Ok((out, tr))
}

/// The BCH lattice gadget `[[Id_h, 0], [l*P, 2l*Id_g]]`, where P is the
/// g-row parity check of an [h, h-g, >= l+1] binary BCH subcode.
#[derive(Clone, Debug, Serialize)]
pub struct BchLattice {
    pub h: u64,
    pub l: u64,
    /// g = (l/2) * log2(h+1)
    pub g: u64,
    pub basis: IntMatrix,
    pub parity: FieldMatrix,
}

pub fn bch_lattice_build(h: u64, l: u64) -> Result<BchLattice> {
    if l == 0 || l % 2 != 0 {
        return Err(Error::validation(format!("bch_lattice_build: l = {l} must be positive and even")));
    }
    if l + 1 > h {
        return Err(Error::validation("bch_lattice_build: need l + 1 <= h"));
    }
    let code = bch_generator(h, l + 1)?; // also validates h + 1 a power of two
    let g = (l / 2) * (h + 1).trailing_zeros() as u64;
    let dim_target = (h - g) as usize;
    if code.dim() < dim_target {
        return Err(Error::validation(format!(
            "bch_lattice_build: code dimension {} below h - g = {dim_target}",
            code.dim()
        )));
    }
    // restrict to a subcode of dimension exactly h - g so the parity check
    // has exactly g rows
    let mut gen_sub = FieldMatrix::zeros(code.field().clone(), h as usize, dim_target);
    for j in 0..dim_target {
        for i in 0..h as usize {
            gen_sub.set(i, j, code.generator.get(i, j));
        }
    }
    let sub = crate::codes::LinearCode {
        generator: gen_sub,
        designed_distance: Some(l + 1),
        systematic: false,
        row_permutation: None,
    };
    let parity = sub.parity_check()?;
    debug_assert_eq!(parity.rows, g as usize);

    let dim = (h + g) as usize;
    let mut basis = IntMatrix::zeros(dim, dim);
    for i in 0..h as usize {
        basis.set(i, i, BigInt::one());
    }
    for i in 0..g as usize {
        for j in 0..h as usize {
            basis.set(h as usize + i, j, BigInt::from(parity.get(i, j) * l));
        }
        basis.set(h as usize + i, h as usize + i, BigInt::from(2 * l));
    }
    Ok(BchLattice { h, l, g, basis, parity })
}

impl BchLattice {
    /// Binary syndrome of a binary word of length h.
    pub fn syndrome(&self, w: &[u8]) -> Vec<u8> {
        let wf: Vec<u64> = w.iter().map(|&b| b as u64).collect();
        self.parity
            .mul_vec(&wf)
            .expect("length checked")
            .into_iter()
            .map(|b| b as u8)
            .collect()
    }
}

/// A sampled center `s = u ∘ (l·v)` together with its exhaustive hit count
/// when verification was requested.
#[derive(Clone, Debug, Serialize)]
pub struct CenterSample {
    pub u: Vec<u8>,
    pub v: Vec<u8>,
    pub s: Vec<BigInt>,
    /// number of z with `||B_BCH z - s||_p^p = r`, counted over the binary
    /// radius-r ball around u (one z per qualifying ball member)
    pub hits: Option<u64>,
}

/// Sample a center for the BCH lattice and optionally count its hits
/// exhaustively. A hit is a binary word w at Hamming distance exactly r
/// from u whose syndrome equals v; each such w extends uniquely to a
/// lattice point at p-th-power distance r from s.
pub fn bch_center_sample(
    lat: &BchLattice,
    r: u64,
    seed: u64,
    verify_budget: Option<u64>,
) -> Result<CenterSample> {
    if r > lat.h {
        return Err(Error::validation("bch_center_sample: r > h"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: Vec<u8> = (0..lat.h).map(|_| rng.gen_range(0..2u8)).collect();
    let v: Vec<u8> = (0..lat.g).map(|_| rng.gen_range(0..2u8)).collect();
    let mut s: Vec<BigInt> = u.iter().map(|&b| BigInt::from(b)).collect();
    s.extend(v.iter().map(|&b| BigInt::from(b as u64 * lat.l)));
    let hits = match verify_budget {
        Some(budget) => Some(count_center_hits(lat, &u, &v, r, budget)?),
        None => None,
    };
    Ok(CenterSample { u, v, s, hits })
}

fn count_center_hits(lat: &BchLattice, u: &[u8], v: &[u8], r: u64, budget: u64) -> Result<u64> {
    let mut count = 0;
    for sub in enumerate_subsets(lat.h as usize, r as usize, budget)? {
        let mut w = u.to_vec();
        for &i in &sub {
            w[i] ^= 1;
        }
        if lat.syndrome(&w) == v {
            count += 1;
        }
    }
    Ok(count)
}

/// Exhaustive syndrome bucketing: `buckets[t]` counts the weight-r binary
/// words of length h whose syndrome is t (as a g-bit little-endian index).
/// The exact average hit count over all centers is `sum(buckets) / 2^g`.
pub fn bch_syndrome_buckets(lat: &BchLattice, r: u64, budget: u64) -> Result<Vec<u64>> {
    let mut buckets = vec![0u64; 1 << lat.g];
    for sub in enumerate_subsets(lat.h as usize, r as usize, budget)? {
        let mut e = vec![0u8; lat.h as usize];
        for &i in &sub {
            e[i] = 1;
        }
        let syn = lat.syndrome(&e);
        let idx: usize = syn
            .iter()
            .enumerate()
            .map(|(i, &b)| (b as usize) << i)
            .sum();
        buckets[idx] += 1;
    }
    Ok(buckets)
}

/// Strict-scale floor for the BCH gadget length: the smallest h with h+1 a
/// power of two and `h >= max(2n, (10^10 l)^{2 eta})`.
pub fn strict_min_h(params: &SvpGadgetParams, n: u64) -> BigInt {
    let floor_a = BigInt::from(2 * n);
    let floor_b = (BigInt::from(10_000_000_000u64) * BigInt::from(params.l))
        .pow(2 * params.eta as u32);
    let floor = floor_a.max(floor_b);
    // h = 2^m - 1 >= floor
    let mut h = BigInt::one();
    while h < floor {
        h = (h << 1) + 1;
    }
    h
}

/// The intermediate lattice `[[2B, 0, 2y], [0, B_BCH, s]]`. Strict mode
/// (no relaxed gadget supplied) never materializes: it reports the symbolic
/// h floor through the error.
pub fn intermediate_lattice(
    inst: &NvpInstance,
    params: &SvpGadgetParams,
    relaxed: Option<(&BchLattice, &[BigInt])>,
) -> Result<IntMatrix> {
    let (n, m) = (inst.basis.rows, inst.basis.cols);
    let Some((bch, s)) = relaxed else {
        return Err(Error::InfeasibleStrictScale {
            what: "intermediate_lattice at strict scale".into(),
            size: strict_min_h(params, n as u64),
        });
    };
    if bch.l != params.l {
        return Err(Error::validation("intermediate_lattice: gadget l mismatch"));
    }
    let dim = (bch.h + bch.g) as usize;
    if s.len() != dim {
        return Err(Error::validation("intermediate_lattice: center length mismatch"));
    }
    let mut b = IntMatrix::zeros(n + dim, m + dim + 1);
    for i in 0..n {
        for j in 0..m {
            b.set(i, j, BigInt::from(2) * inst.basis.get(i, j));
        }
        b.set(i, m + dim, BigInt::from(2) * &inst.target[i]);
    }
    for i in 0..dim {
        for j in 0..dim {
            b.set(n + i, m + j, bch.basis.get(i, j).clone());
        }
        b.set(n + i, m + dim, s[i].clone());
    }
    Ok(b)
}

/// Result of exhaustive short-vector counting.
#[derive(Clone, Debug)]
pub struct VectorCount {
    pub count: u64,
    /// true when every counted vector has all coordinates even
    pub all_even: bool,
    pub vectors: Vec<Vec<BigInt>>,
}

/// Count the nonzero lattice vectors with `||.||_p^p <= threshold` by
/// ambient shell enumeration (good threshold: `gamma_p^{-1} l`; bad
/// threshold: `l`). Optionally collects the vectors themselves.
pub fn count_vectors(
    basis: &IntMatrix,
    threshold: &BigRational,
    p: u32,
    collect: bool,
    budget: u64,
) -> Result<VectorCount> {
    if p == 0 {
        return Err(Error::validation("count_vectors: p >= 1"));
    }
    let max_norm = threshold
        .floor()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::validation("count_vectors: threshold out of range"))?;
    let solver = LatticeSolver::new(basis);
    let mut out = VectorCount {
        count: 0,
        all_even: true,
        vectors: Vec::new(),
    };
    let mut v = vec![BigInt::zero(); basis.rows];
    let mut explored = 0u64;
    for shell in 1..=max_norm {
        ball_walk(&mut v, 0, shell, p, &mut explored, budget, &mut |vec| {
            if solver.contains(vec) {
                out.count += 1;
                if vec.iter().any(|e| !(e % 2i32).is_zero()) {
                    out.all_even = false;
                }
                if collect {
                    out.vectors.push(vec.to_vec());
                }
            }
            Ok(())
        })?;
    }
    Ok(out)
}

fn ball_walk(
    v: &mut [BigInt],
    idx: usize,
    remaining: u64,
    p: u32,
    explored: &mut u64,
    budget: u64,
    visit: &mut impl FnMut(&[BigInt]) -> Result<()>,
) -> Result<()> {
    if idx == v.len() {
        if remaining == 0 {
            *explored += 1;
            if *explored > budget {
                return Err(Error::Budget {
                    what: "count_vectors ambient enumeration".into(),
                    explored: *explored,
                    budget,
                });
            }
            visit(v)?;
        }
        return Ok(());
    }
    let max_abs = crate::oracles::pth_root_floor(remaining, p) as i64;
    for val in -max_abs..=max_abs {
        let cost = val.unsigned_abs().pow(p);
        if cost > remaining {
            continue;
        }
        v[idx] = BigInt::from(val);
        ball_walk(v, idx + 1, remaining - cost, p, explored, budget, visit)?;
    }
    v[idx] = BigInt::zero();
    Ok(())
}

/// Deterministic Miller-Rabin for n < 3.3 * 10^24 (our toy primes are far
/// smaller); the fixed witness set is sufficient there.
pub fn is_prime_bigint(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for w in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let wb = BigInt::from(w);
        if n == &wb {
            return true;
        }
        if (n % &wb).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - 1;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while (&d % &two).is_zero() {
        d /= 2;
        s += 1;
    }
    'witness: for w in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_DRAW_BUDGET: u64 = 100_000;

/// Appended data from the final-lattice construction (the sampled prime and
/// constraint vector), for survival accounting.
#[derive(Clone, Debug, Serialize)]
pub struct FinalLatticeInfo {
    pub rho: BigInt,
    pub r_vec: Vec<BigInt>,
}

/// Add one random homogeneous constraint: sample a prime
/// `rho in [10^-4 N_g, 10^-2 N_g]` and uniform r, and emit
/// `B_svp = [[B_int, 0], [l r^T B_int, l rho]]` with threshold
/// `gamma_p^{-1} l`.
pub fn final_lattice(
    b_int: &IntMatrix,
    params: &SvpGadgetParams,
    n_g: &BigInt,
    seed: u64,
) -> Result<(SvpInstance, FinalLatticeInfo)> {
    if n_g < &BigInt::from(10_000) {
        return Err(Error::validation("final_lattice: N_g must be at least 10^4"));
    }
    let lo = n_g / 10_000;
    let hi = n_g / 100;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rho = None;
    for _ in 0..PRIME_DRAW_BUDGET {
        let cand = rng.gen_bigint_range(&lo, &(&hi + 1));
        if is_prime_bigint(&cand) {
            rho = Some(cand);
            break;
        }
    }
    let rho = rho.ok_or_else(|| Error::validation("final_lattice: no prime found in the interval"))?;
    let r_vec: Vec<BigInt> = (0..b_int.rows)
        .map(|_| rng.gen_bigint_range(&BigInt::zero(), &rho))
        .collect();

    let (rows, cols) = (b_int.rows, b_int.cols);
    let l = BigInt::from(params.l);
    let mut basis = IntMatrix::zeros(rows + 1, cols + 1);
    for j in 0..cols {
        let mut dot = BigInt::zero();
        for i in 0..rows {
            basis.set(i, j, b_int.get(i, j).clone());
            dot += &r_vec[i] * b_int.get(i, j);
        }
        basis.set(rows, j, &l * dot);
    }
    basis.set(rows, cols, &l * &rho);
    let inst = SvpInstance {
        basis,
        k: params.k_svp(),
        norm: NormSpec::LpPow(params.p),
        witness: None,
    };
    Ok((inst, FinalLatticeInfo { rho, r_vec }))
}

/// Desk-scale overrides for [`nvp_to_svp`].
#[derive(Clone, Debug)]
pub struct RelaxedScale {
    /// BCH gadget length (h + 1 a power of two)
    pub h: u64,
    /// stand-in for N_g, whose strict value is astronomical
    pub n_g: BigInt,
    /// budget for the witness-forwarding ball search
    pub hit_budget: u64,
}

/// The composed reduction: center sample → intermediate lattice → final
/// lattice. Strict mode insists on gamma_p > 1 and then reports the
/// infeasible h floor; relaxed mode materializes everything at the given h
/// (recording when gamma_p <= 1 makes the run certification-only).
pub fn nvp_to_svp(
    inst: &NvpInstance,
    eta: u64,
    seed: u64,
    relaxed: Option<&RelaxedScale>,
) -> Result<(SvpInstance, ReductionTrace)> {
    let NormSpec::LpPow(p) = inst.norm else {
        return Err(Error::validation("nvp_to_svp: Lp norms only"));
    };
    let t = inst.k;
    let params = SvpGadgetParams::new(p, eta, t)?;
    if relaxed.is_none() && !params.gamma_admissible() {
        return Err(Error::validation(format!(
            "nvp_to_svp: gamma_p = {} <= 1; smallest admissible eta for p = {p} is {}",
            params.gamma_p,
            min_admissible_eta(p)
        )));
    }
    let Some(rx) = relaxed else {
        // surfaces the symbolic h floor
        intermediate_lattice(inst, &params, None)?;
        unreachable!("strict intermediate_lattice always errors");
    };

    let bch = bch_lattice_build(rx.h, params.l)?;
    let sample = bch_center_sample(&bch, params.r, derive_seed(seed, 0), None)?;
    let b_int = intermediate_lattice(inst, &params, Some((&bch, &sample.s)))?;
    let (mut svp, info) = final_lattice(&b_int, &params, &rx.n_g, derive_seed(seed, 1))?;

    // witness: extend the NVP witness by a gadget hit; it survives only when
    // the random constraint annihilates it
    let mut witness_forwarded = false;
    if let Some(Witness::Integral { x }) = &inst.witness {
        if x.len() == inst.basis.cols {
            if let Some(z) = find_hit(&bch, &sample, params.r, rx.hit_budget)? {
                let mut coeffs = x.clone();
                coeffs.extend(z);
                coeffs.push(BigInt::from(-1));
                let u = b_int.mul_vec(&coeffs)?;
                let dot: BigInt = info.r_vec.iter().zip(&u).map(|(r, a)| r * a).sum();
                if (&dot % &info.rho).is_zero() {
                    coeffs.push(-(dot / &info.rho));
                    svp.witness = Some(Witness::Integral { x: coeffs });
                    witness_forwarded = true;
                }
            }
        }
    }

    let mut tr_params = Map::new();
    tr_params.insert("eta".into(), json!(eta));
    tr_params.insert("p".into(), json!(p));
    tr_params.insert("l".into(), json!(params.l));
    tr_params.insert("r".into(), json!(params.r));
    tr_params.insert("h".into(), json!(rx.h));
    tr_params.insert("gamma_p".into(), json!(params.gamma_p.to_string()));
    tr_params.insert("gamma_admissible".into(), json!(params.gamma_admissible()));
    tr_params.insert("k_svp".into(), json!(params.k_svp().to_string()));
    tr_params.insert("rho".into(), json!(info.rho.to_string()));
    tr_params.insert("success_accounting".into(), json!("YES >= 0.8, NO >= 0.9 at strict scale"));
    let tr = ReductionTrace {
        stage: "nvp_to_svp".into(),
        input_digest: digest_json(inst),
        output_digest: digest_json(&svp),
        seed: Some(seed),
        k_in: t,
        k_out: params.l,
        params: tr_params,
        witness_forwarded,
    };
    Ok((svp, tr))
}

/// Find one gadget coefficient vector z with `||B_BCH z - s||_p^p = r`:
/// a radius-r ball member of u with syndrome v, with the even part absorbed
/// by the second block.
fn find_hit(
    bch: &BchLattice,
    sample: &CenterSample,
    r: u64,
    budget: u64,
) -> Result<Option<Vec<BigInt>>> {
    Ok(collect_hits(bch, sample, r, budget, Some(1))?.into_iter().next())
}

/// All gadget hits for a sampled center (desk scale only).
pub fn enumerate_hits(
    bch: &BchLattice,
    sample: &CenterSample,
    r: u64,
    budget: u64,
) -> Result<Vec<Vec<BigInt>>> {
    collect_hits(bch, sample, r, budget, None)
}

fn collect_hits(
    bch: &BchLattice,
    sample: &CenterSample,
    r: u64,
    budget: u64,
    limit: Option<usize>,
) -> Result<Vec<Vec<BigInt>>> {
    let mut out = Vec::new();
    for sub in enumerate_subsets(bch.h as usize, r as usize, budget)? {
        let mut w = sample.u.clone();
        for &i in &sub {
            w[i] ^= 1;
        }
        if bch.syndrome(&w) != sample.v {
            continue;
        }
        // z2 = (v - P w) / 2 over the integers
        let mut z: Vec<BigInt> = w.iter().map(|&b| BigInt::from(b)).collect();
        for i in 0..bch.g as usize {
            let pw: i64 = (0..bch.h as usize)
                .map(|j| (bch.parity.get(i, j) * w[j] as u64) as i64)
                .sum();
            let diff = sample.v[i] as i64 - pw;
            debug_assert_eq!(diff.rem_euclid(2), 0);
            z.push(BigInt::from(diff / 2));
        }
        // re-verify the norm identity
        debug_assert_eq!(
            {
                let bz = bch.basis.mul_vec(&z).unwrap();
                let d: Vec<BigInt> = bz.iter().zip(&sample.s).map(|(a, s)| a - s).collect();
                norm(&d, &NormSpec::LpPow(1))
            },
            BigInt::from(r)
        );
        out.push(z);
        if limit.is_some_and(|l| out.len() >= l) {
            break;
        }
    }
    Ok(out)
}
