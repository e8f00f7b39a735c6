//! The coding-side reduction chain: BSMD → LDS → ColoredLDS → MLD → SNC →
//! MDP, plus tensor gap amplification, the OddSet detour, and a generic
//! success amplifier. Every reduction forwards witnesses and emits a
//! [`ReductionTrace`]; the output parameter k′ is always a function of the
//! input parameter alone.

use crate::codes::{lsdc_build, Lsdc, SuffixSearcher};
use crate::error::{Error, Result};
use crate::galois::{big_f_map, c_set, f_map, field_make, is_prime, FieldSpec};
use crate::matspace::{kernel_basis, tensor_generator, FieldMatrix};
use crate::problems::{
    BsmdInstance, ColoredLdsInstance, LdsInstance, MdpInstance, MldInstance, OddSetInstance,
    SncInstance, Witness,
};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Provenance record for one reduction application.
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct ReductionTrace {
    pub stage: String,
    pub input_digest: String,
    pub output_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub k_in: u64,
    pub k_out: u64,
    pub params: Map<String, Value>,
    pub witness_forwarded: bool,
}

pub fn digest_json<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    format!("{:x}", hasher.finalize())
}

fn trace(
    stage: &str,
    input: &impl Serialize,
    output: &impl Serialize,
    seed: Option<u64>,
    k_in: u64,
    k_out: u64,
    params: Map<String, Value>,
    witness_forwarded: bool,
) -> ReductionTrace {
    ReductionTrace {
        stage: stage.into(),
        input_digest: digest_json(input),
        output_digest: digest_json(output),
        seed,
        k_in,
        k_out,
        params,
        witness_forwarded,
    }
}

/// Parameters of the clique-side starting point (the graph transformation
/// itself is an external black box; only the parameter arithmetic is here).
#[derive(Clone, Debug, Serialize)]
pub struct CliqueParams {
    pub s: BigInt,
    pub h: BigInt,
    /// k = 1 gives s = 0.
    pub degenerate: bool,
    /// Set when 6 does not divide k + 1; carries the next admissible k.
    pub padding_advisory: Option<u64>,
}

/// `s = C(k,2)`, `h = (k+6)! * (gamma * k^2)^(k^2)`, exactly.
pub fn clique_params(k: u64, gamma: u64) -> Result<CliqueParams> {
    if k < 1 || gamma < 1 {
        return Err(Error::validation("clique_params: k >= 1 and gamma >= 1"));
    }
    let s = BigInt::from(k * (k - 1) / 2);
    let mut h = BigInt::one();
    for i in 1..=k + 6 {
        h *= BigInt::from(i);
    }
    h *= BigInt::from(gamma * k * k).pow((k * k) as u32);
    let padding_advisory = if (k + 1) % 6 == 0 {
        None
    } else {
        Some(k + (6 - (k + 1) % 6)) // next k with 6 | k+1
    };
    Ok(CliqueParams {
        s,
        h,
        degenerate: k == 1,
        padding_advisory,
    })
}

/// The Vandermonde embedding: `(1, v, v^2, ..., v^{len-1})` padded with
/// zeros to total length `b`.
fn vandermonde_block(field: &FieldSpec, v: u64, len: usize, b: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(b);
    let mut pow = 1u64;
    for _ in 0..len {
        out.push(pow);
        pow = field.mul(pow, v);
    }
    out.resize(b, 0);
    out
}

/// BSMD → LDS over F_q (q a prime power exceeding the vertex count):
/// vertices become distinct field elements (left list first, then right, in
/// listed order); each edge (u, v) becomes a block vector carrying the
/// right-side embedding of u in block v and the left-side embedding of v in
/// block u; a planted biclique forwards to an hs-term dependency.
pub fn bsmd_to_lds(
    inst: &BsmdInstance,
    q: u64,
) -> Result<(LdsInstance, ReductionTrace)> {
    let n = inst.left.len() + inst.right.len();
    if inst.s < 2 || inst.h < 2 || inst.s > inst.h {
        return Err(Error::validation("bsmd_to_lds: need 2 <= s <= h"));
    }
    if inst.edges.is_empty() {
        return Err(Error::validation("bsmd_to_lds: edge-free graph"));
    }
    let field = prime_power_field(q)?;
    if q <= n as u64 {
        return Err(Error::validation(format!(
            "bsmd_to_lds: q = {q} must exceed the vertex count {n}"
        )));
    }
    let s = inst.s as usize;
    let h = inst.h as usize;
    let b = s + h;
    let m = q as usize * b;

    // vertex -> field element code, left vertices first
    let mut code_of = std::collections::HashMap::new();
    for (i, &v) in inst.left.iter().chain(inst.right.iter()).enumerate() {
        code_of.insert(v, i as u64);
    }

    let mut w = Vec::with_capacity(inst.edges.len());
    for &(u, v) in &inst.edges {
        let (cu, cv) = (code_of[&u], code_of[&v]);
        let mut vec = vec![0u64; m];
        // block at v's element: iota_R-style embedding of u? No: the block
        // indexed by v carries the LEFT-side image of u (length s-1), and the
        // block indexed by u carries the RIGHT-side image of v (length h-1).
        let iota_u = vandermonde_block(&field, cu, s - 1, b);
        let iota_v = vandermonde_block(&field, cv, h - 1, b);
        vec[cv as usize * b..(cv as usize + 1) * b].copy_from_slice(&iota_u);
        vec[cu as usize * b..(cu as usize + 1) * b].copy_from_slice(&iota_v);
        w.push(vec);
    }
    let k = inst.h * inst.s;

    // forward a biclique witness: left coefficients from the s-term
    // dependency of the left embeddings, right from the h-term one
    let witness = match &inst.witness {
        Some(Witness::Biclique { left, right })
            if left.len() == s && right.len() == h =>
        {
            let lvecs: Vec<Vec<u64>> = left
                .iter()
                .map(|u| vandermonde_block(&field, code_of[u], s - 1, s - 1))
                .collect();
            let rvecs: Vec<Vec<u64>> = right
                .iter()
                .map(|v| vandermonde_block(&field, code_of[v], h - 1, h - 1))
                .collect();
            let bu = dependency_coeffs(&field, &lvecs)?;
            let bv = dependency_coeffs(&field, &rvecs)?;
            let mut indices = Vec::new();
            let mut coeffs = Vec::new();
            for (ui, &u) in left.iter().enumerate() {
                for (vi, &v) in right.iter().enumerate() {
                    let e = inst
                        .edges
                        .iter()
                        .position(|&(a, c)| (a, c) == (u, v))
                        .ok_or_else(|| {
                            Error::validation("bsmd_to_lds: witness biclique edge missing")
                        })?;
                    indices.push(e);
                    coeffs.push(field.mul(bu[ui], bv[vi]));
                }
            }
            Some(Witness::Dependency { indices, coeffs })
        }
        _ => None,
    };

    let out = LdsInstance {
        field,
        w,
        k,
        witness: witness.clone(),
    };
    let mut params = Map::new();
    params.insert("q".into(), json!(q));
    params.insert("B".into(), json!(b));
    params.insert("m".into(), json!(m));
    let tr = trace(
        "bsmd_to_lds",
        inst,
        &out,
        None,
        inst.k(),
        k,
        params,
        witness.is_some(),
    );
    Ok((out, tr))
}

fn prime_power_field(q: u64) -> Result<FieldSpec> {
    for p in 2..=q {
        if !is_prime(p) || q % p != 0 {
            continue;
        }
        let mut d = 0;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            d += 1;
        }
        if rest == 1 {
            return field_make(p, d);
        }
        break;
    }
    Err(Error::validation(format!("{q} is not a prime power")))
}

/// Coefficients of the (unique up to scale) vanishing combination of a
/// minimally dependent vector list.
fn dependency_coeffs(field: &FieldSpec, vecs: &[Vec<u64>]) -> Result<Vec<u64>> {
    let mat = FieldMatrix::from_rows(field.clone(), vecs)?.transpose();
    let ker = kernel_basis(&mat);
    if ker.cols != 1 {
        return Err(Error::validation(
            "dependency_coeffs: expected a one-dimensional kernel",
        ));
    }
    let coeffs = ker.col(0);
    if coeffs.iter().any(|&c| c == 0) {
        return Err(Error::validation(
            "dependency_coeffs: vanishing combination has a zero coefficient",
        ));
    }
    Ok(coeffs)
}

/// An (n, k)-perfect hash family: functions [n] → [k] (1-based values) such
/// that every k-subset of [n] is injectively colored by some member.
/// Deterministic: special-cases k = 1, k = n, and k = 2 (bit functions);
/// otherwise greedy seeded random search with exhaustive verification.
pub fn perfect_hash_build(n: usize, k: u64, budget: u64) -> Result<Vec<Vec<u64>>> {
    if k == 0 || k as usize > n {
        return Err(Error::validation("perfect_hash_build: need 1 <= k <= n"));
    }
    if k == 1 {
        return Ok(vec![vec![1; n]]);
    }
    if k as usize == n {
        return Ok(vec![(1..=k).collect()]);
    }
    if k == 2 {
        // binary-code family: bit b of the index; any two indices differ
        // somewhere, so some function separates them
        let bits = usize::BITS - (n - 1).leading_zeros();
        return Ok((0..bits)
            .map(|b| (0..n).map(|i| (i >> b & 1) as u64 + 1).collect())
            .collect());
    }

    let subsets = enumerate_subsets(n, k as usize, budget)?;
    let injective =
        |f: &[u64], sub: &[usize]| -> bool {
            let mut seen = 0u64;
            for &i in sub {
                let bit = 1 << f[i];
                if seen & bit != 0 {
                    return false;
                }
                seen |= bit;
            }
            true
        };
    let mut family: Vec<Vec<u64>> = Vec::new();
    let mut uncovered: Vec<&Vec<usize>> = subsets.iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9_7f4a_7c15);
    let mut stale = 0;
    while !uncovered.is_empty() {
        let f: Vec<u64> = if stale < 200 {
            (0..n).map(|_| rng.gen_range(1..=k)).collect()
        } else {
            // guaranteed progress: color one uncovered subset injectively
            let sub = uncovered[0];
            let mut f = vec![1u64; n];
            for (c, &i) in sub.iter().enumerate() {
                f[i] = c as u64 + 1;
            }
            f
        };
        let before = uncovered.len();
        uncovered.retain(|sub| !injective(&f, sub));
        if uncovered.len() < before {
            family.push(f);
            stale = 0;
        } else {
            stale += 1;
        }
    }
    // exhaustive verification
    for sub in &subsets {
        debug_assert!(family.iter().any(|f| injective(f, sub)));
    }
    Ok(family)
}

pub(crate) fn enumerate_subsets(n: usize, k: usize, budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut count: u64 = 1;
    for i in 0..k as u64 {
        count = count
            .checked_mul(n as u64 - i)
            .ok_or_else(|| Error::Budget {
                what: "perfect_hash_build subset enumeration".into(),
                explored: 0,
                budget,
            })?
            / (i + 1);
    }
    if count > budget {
        return Err(Error::Budget {
            what: "perfect_hash_build subset enumeration".into(),
            explored: 0,
            budget,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut sub: Vec<usize> = (0..k).collect();
    loop {
        out.push(sub.clone());
        // next combination in lex order
        let mut i = k;
        while i > 0 {
            i -= 1;
            if sub[i] != i + n - k {
                sub[i] += 1;
                for j in i + 1..k {
                    sub[j] = sub[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return Ok(out);
            }
        }
        if k == 0 {
            return Ok(out);
        }
    }
}

/// Color-coding: one shifted copy of every vector per hash function, colored
/// by that function. A YES witness forwards through the first family member
/// that splits it.
pub fn lds_color(inst: &LdsInstance, budget: u64) -> Result<(ColoredLdsInstance, ReductionTrace)> {
    let nw = inst.w.len();
    let m = inst.w.first().map_or(0, |v| v.len());
    if inst.k == 0 || nw == 0 {
        return Err(Error::validation("lds_color: empty instance"));
    }
    let family = perfect_hash_build(nw, inst.k, budget)?;
    let r = family.len();
    if r > 1 && inst.w.iter().any(|v| v.iter().all(|&e| e == 0)) {
        return Err(Error::validation(
            "lds_color: zero vector would collide across shifted copies",
        ));
    }
    let mut w = Vec::with_capacity(nw * r);
    let mut colors = Vec::with_capacity(nw * r);
    for (j, f) in family.iter().enumerate() {
        for (i, v) in inst.w.iter().enumerate() {
            let mut shifted = vec![0u64; m * r];
            shifted[j * m..(j + 1) * m].copy_from_slice(v);
            w.push(shifted);
            colors.push(f[i]);
        }
    }
    let witness = match &inst.witness {
        Some(Witness::Dependency { indices, coeffs }) => family
            .iter()
            .position(|f| {
                let cs: std::collections::HashSet<u64> =
                    indices.iter().map(|&i| f[i]).collect();
                cs.len() == indices.len()
            })
            .map(|j| Witness::Dependency {
                indices: indices.iter().map(|&i| j * nw + i).collect(),
                coeffs: coeffs.clone(),
            }),
        _ => None,
    };
    let out = ColoredLdsInstance {
        field: inst.field.clone(),
        w,
        colors,
        k: inst.k,
        witness: witness.clone(),
    };
    let mut params = Map::new();
    params.insert("family_size".into(), json!(r));
    let tr = trace(
        "lds_color",
        inst,
        &out,
        None,
        inst.k,
        inst.k,
        params,
        witness.is_some(),
    );
    Ok((out, tr))
}

/// Simple ColoredLDS → MLD over F_2 (characteristic-2 fields only, gap 3−ε):
/// one column `e_{c(w)} ∘ F(a·w)` per pair (w, a ≠ 0); target `1_k ∘ 0`.
pub fn lds_to_mld_simple(
    inst: &ColoredLdsInstance,
) -> Result<(MldInstance, ReductionTrace)> {
    let field = &inst.field;
    if field.p != 2 {
        return Err(Error::validation("lds_to_mld_simple: characteristic 2 only"));
    }
    let k = inst.k as usize;
    let m = inst.w.first().map_or(0, |v| v.len());
    let d = field.d;
    let f2 = field_make(2, 1)?;
    let rows = k + m * d;
    let cols = inst.w.len() * (field.size() as usize - 1);
    let mut a = FieldMatrix::zeros(f2.clone(), rows, cols);
    let mut col = 0;
    for (wi, w) in inst.w.iter().enumerate() {
        for aval in 1..field.size() {
            a.set(inst.colors[wi] as usize - 1, col, 1);
            let scaled: Vec<u64> = w.iter().map(|&e| field.mul(aval, e)).collect();
            for (row, bit) in big_f_map(field, &scaled)?.into_iter().enumerate() {
                a.set(k + row, col, bit);
            }
            col += 1;
        }
    }
    let mut y = vec![0u64; rows];
    y[..k].fill(1);

    let witness = pad_witness(
        forward_rainbow_witness(inst, |wi, aval| {
            Some(wi * (field.size() as usize - 1) + aval as usize - 1)
        }),
        cols,
    );
    let out = MldInstance {
        a,
        y,
        k: inst.k,
        witness: witness.clone(),
    };
    let mut params = Map::new();
    params.insert("columns".into(), json!(cols));
    params.insert("gap_note".into(), json!("3 - epsilon only"));
    let tr = trace(
        "lds_to_mld_simple",
        inst,
        &out,
        None,
        inst.k,
        inst.k,
        params,
        witness.is_some(),
    );
    Ok((out, tr))
}

/// Build the binary MLD witness from a rainbow dependency witness, given a
/// map from (vector index, coefficient value) to the matching column.
fn forward_rainbow_witness(
    inst: &ColoredLdsInstance,
    column_of: impl Fn(usize, u64) -> Option<usize>,
) -> Option<Witness> {
    let Some(Witness::Dependency { indices, coeffs }) = &inst.witness else {
        return None;
    };
    if indices.len() != inst.k as usize {
        return None;
    }
    let cset: std::collections::HashSet<u64> =
        indices.iter().map(|&i| inst.colors[i]).collect();
    if cset.len() != indices.len() {
        return None;
    }
    let mut picks = Vec::new();
    for (&i, &c) in indices.iter().zip(coeffs) {
        picks.push(column_of(i, c)?);
    }
    Some(Witness::Binary {
        x: picks_to_bits(&picks),
    })
}

fn picks_to_bits(picks: &[usize]) -> Vec<u8> {
    let len = picks.iter().max().map_or(0, |&m| m + 1);
    let mut x = vec![0u8; len];
    for &p in picks {
        x[p] = 1;
    }
    x
}

/// Pad a binary witness vector to the instance's column count.
fn pad_witness(w: Option<Witness>, cols: usize) -> Option<Witness> {
    w.map(|w| match w {
        Witness::Binary { mut x } => {
            x.resize(cols, 0);
            Witness::Binary { x }
        }
        other => other,
    })
}

/// Index structure for the strong reduction: functions g from colors [k] to
/// coordinate/value pairs (i, alpha) in [d] × (F_p \ {0}).
fn decode_g(gidx: u64, k: usize, d: usize, p: u64) -> Vec<(usize, u64)> {
    let base = (d as u64) * (p - 1);
    let mut digits = Vec::with_capacity(k);
    let mut rest = gidx;
    for _ in 0..k {
        digits.push(rest % base);
        rest /= base;
    }
    digits.reverse(); // color 1 is the most significant digit
    digits
        .into_iter()
        .map(|t| ((t / (p - 1)) as usize + 1, t % (p - 1) + 1))
        .collect()
}

/// Strong ColoredLDS → MLD over the prime subfield F_p, preserving the full
/// gap. One block per function g: [k] → [d] × (F_p \ {0}); block g admits,
/// for each vector w, the columns `e_{c(w)} ∘ shifted F(a·w)` over the
/// coefficients `a` in the set `C_{g(c(w))}`.
pub fn lds_to_mld(
    inst: &ColoredLdsInstance,
    budget: u64,
) -> Result<(MldInstance, ReductionTrace)> {
    let field = &inst.field;
    let (p, d) = (field.p, field.d);
    let k = inst.k as usize;
    let m = inst.w.first().map_or(0, |v| v.len());
    let ell = ((d as u64) * (p - 1))
        .checked_pow(k as u32)
        .filter(|&l| l.saturating_mul(inst.w.len() as u64) <= budget)
        .ok_or_else(|| Error::Budget {
            what: "lds_to_mld block enumeration".into(),
            explored: 0,
            budget,
        })?;
    let fp = field_make(p, 1)?;
    let rows = k + m * d * ell as usize;

    // precompute the C sets
    let mut csets = std::collections::HashMap::new();
    for i in 1..=d {
        for alpha in 1..p {
            csets.insert((i, alpha), c_set(field, i, alpha)?);
        }
    }

    let mut columns: Vec<Vec<u64>> = Vec::new();
    // (gidx, vector index, coefficient) -> column, for witness forwarding
    let mut col_of = std::collections::HashMap::new();
    for gidx in 0..ell {
        let g = decode_g(gidx, k, d, p);
        for (wi, w) in inst.w.iter().enumerate() {
            let color = inst.colors[wi] as usize;
            let pair = g[color - 1];
            for &aval in &csets[&pair] {
                let mut colv = vec![0u64; rows];
                colv[color - 1] = 1;
                let scaled: Vec<u64> = w.iter().map(|&e| field.mul(aval, e)).collect();
                let offset = k + gidx as usize * m * d;
                for (row, digit) in big_f_map(field, &scaled)?.into_iter().enumerate() {
                    colv[offset + row] = digit;
                }
                col_of.insert((gidx, wi, aval), columns.len());
                columns.push(colv);
            }
        }
    }
    let cols = columns.len();
    let mut a = FieldMatrix::zeros(fp, rows, cols);
    for (j, colv) in columns.iter().enumerate() {
        for (i, &v) in colv.iter().enumerate() {
            a.set(i, j, v);
        }
    }
    let mut y = vec![0u64; rows];
    y[..k].fill(1);

    // witness: pick the g whose (i, alpha) pair matches each coefficient's
    // first nonzero coordinate
    let witness = {
        let target_g: Option<Vec<(usize, u64)>> = match &inst.witness {
            Some(Witness::Dependency { indices, coeffs })
                if indices.len() == k
                    && indices
                        .iter()
                        .map(|&i| inst.colors[i])
                        .collect::<std::collections::HashSet<_>>()
                        .len()
                        == k =>
            {
                let mut per_color = vec![None; k];
                for (&i, &c) in indices.iter().zip(coeffs) {
                    let f = f_map(field, c)?;
                    let j = f.iter().position(|&x| x != 0).expect("nonzero coeff");
                    per_color[inst.colors[i] as usize - 1] = Some((j + 1, f[j]));
                }
                per_color.into_iter().collect()
            }
            _ => None,
        };
        match (target_g, &inst.witness) {
            (Some(g), Some(Witness::Dependency { indices, coeffs })) => {
                let gidx = encode_g(&g, d, p);
                let picks: Option<Vec<usize>> = indices
                    .iter()
                    .zip(coeffs)
                    .map(|(&i, &c)| col_of.get(&(gidx, i, c)).copied())
                    .collect();
                picks.map(|p| {
                    let mut x = vec![0u8; cols];
                    for j in p {
                        x[j] = 1;
                    }
                    Witness::Binary { x }
                })
            }
            _ => None,
        }
    };

    let out = MldInstance {
        a,
        y,
        k: inst.k,
        witness: witness.clone(),
    };
    let mut params = Map::new();
    params.insert("ell".into(), json!(ell));
    params.insert("columns".into(), json!(cols));
    let tr = trace(
        "lds_to_mld",
        inst,
        &out,
        None,
        inst.k,
        inst.k,
        params,
        witness.is_some(),
    );
    Ok((out, tr))
}

fn encode_g(g: &[(usize, u64)], d: usize, p: u64) -> u64 {
    let base = (d as u64) * (p - 1);
    let mut idx = 0;
    for &(i, alpha) in g {
        idx = idx * base + ((i as u64 - 1) * (p - 1) + (alpha - 1));
    }
    idx
}

/// MLD → SNC over F_2: stack `a = ceil(gamma*k + 1)` copies of the system so
/// that the combined objective `a*||Bx − z||_0 + ||x||_0` forces exact
/// solutions below the gap threshold.
pub fn mld_to_snc(
    inst: &MldInstance,
    gamma: Ratio<u64>,
) -> Result<(SncInstance, ReductionTrace)> {
    if inst.a.spec.size() != 2 {
        return Err(Error::validation("mld_to_snc: F_2 inputs only"));
    }
    let a_copies = (gamma * inst.k).ceil().to_integer() + 1;
    let mut stacked = inst.a.clone();
    let mut y = inst.y.clone();
    for _ in 1..a_copies {
        stacked = stacked.vstack(&inst.a)?;
        y.extend_from_slice(&inst.y);
    }
    let witness = inst.witness.clone();
    let out = SncInstance {
        a: stacked,
        y,
        k: inst.k,
        witness: witness.clone(),
    };
    let mut params = Map::new();
    params.insert("a".into(), json!(a_copies));
    let tr = trace(
        "mld_to_snc",
        inst,
        &out,
        None,
        inst.k,
        inst.k,
        params,
        witness.is_some(),
    );
    Ok((out, tr))
}

/// MLD → OddSet (all-ones target): append the column `(1_n + y) ∘ 1` and a
/// final row selecting it; k′ = k + 1.
pub fn mld_to_oddset(
    inst: &MldInstance,
    gamma: Ratio<u64>,
    gamma_prime: Ratio<u64>,
) -> Result<(OddSetInstance, ReductionTrace)> {
    if inst.a.spec.size() != 2 {
        return Err(Error::validation("mld_to_oddset: F_2 inputs only"));
    }
    if gamma_prime <= gamma {
        return Err(Error::validation("mld_to_oddset: need gamma' > gamma"));
    }
    let (n, m) = (inst.a.rows, inst.a.cols);
    let mut a = FieldMatrix::zeros(inst.a.spec.clone(), n + 1, m + 1);
    for i in 0..n {
        for j in 0..m {
            a.set(i, j, inst.a.get(i, j));
        }
        a.set(i, m, 1 ^ inst.y[i]);
    }
    a.set(n, m, 1);
    let threshold = gamma / (gamma_prime - gamma);
    let advisory = Ratio::from_integer(inst.k) <= threshold;
    let witness = inst.witness.clone().and_then(|w| match w {
        Witness::Binary { mut x } => {
            x.push(1);
            Some(Witness::Binary { x })
        }
        _ => None,
    });
    let out = OddSetInstance {
        a,
        k: inst.k + 1,
        witness: witness.clone(),
    };
    let mut params = Map::new();
    params.insert("k_threshold_advisory".into(), json!(advisory));
    let tr = trace(
        "mld_to_oddset",
        inst,
        &out,
        None,
        inst.k,
        inst.k + 1,
        params,
        witness.is_some(),
    );
    Ok((out, tr))
}

/// Smallest odd integer strictly greater than 2.5 t.
pub fn smallest_odd_above_2_5(t: u64) -> u64 {
    let mut d = 5 * t / 2 + 1;
    if d % 2 == 0 {
        d += 1;
    }
    d
}

/// The randomized SNC → MDP reduction with its LSDC prebuilt, so one
/// instance can be pushed through many seeds cheaply.
pub struct SncToMdp {
    inst: SncInstance,
    pub lsdc: Lsdc,
    searcher: SuffixSearcher,
    /// generator template; the suffix part of the last column is rewritten
    /// per seed
    template: FieldMatrix,
    pub d: u64,
    pub k_out: u64,
    pub t: u64,
}

impl SncToMdp {
    /// `toy_h` overrides the LSDC length floor (desk-scale mode).
    pub fn new(inst: &SncInstance, toy_h: Option<u64>) -> Result<Self> {
        if inst.a.spec.size() != 2 {
            return Err(Error::validation("snc_to_mdp: F_2 inputs only"));
        }
        let t = inst.k;
        if t == 0 {
            return Err(Error::validation("snc_to_mdp: k must be positive"));
        }
        let d = smallest_odd_above_2_5(t);
        let q = inst.a.cols as u64;
        let lsdc = lsdc_build(q, d, toy_h)?;
        let searcher = SuffixSearcher::new(&lsdc.code)?;
        let k_out = t + (d - 1) / 2;

        let n = inst.a.rows;
        let h = lsdc.code.length();
        let ml = lsdc.code.dim();
        let f2 = inst.a.spec.clone();
        let mut template = FieldMatrix::zeros(f2, n + h, ml + 1);
        for j in 0..ml {
            if j < q as usize {
                for i in 0..n {
                    template.set(i, j, inst.a.get(i, j));
                }
            }
            for i in 0..h {
                template.set(n + i, j, lsdc.code.generator.get(i, j));
            }
        }
        for i in 0..n {
            template.set(i, ml, inst.y[i]);
        }
        // suffix of the last column (rows n+q..) is the per-seed shift s
        Ok(SncToMdp {
            inst: inst.clone(),
            lsdc,
            searcher,
            template,
            d,
            k_out,
            t,
        })
    }

    /// Like [`SncToMdp::run`] but without the witness-forwarding ball
    /// search, for high-volume seed sweeps that certify via an oracle.
    pub fn run_bare(&self, seed: u64) -> MdpInstance {
        self.build(seed, false)
    }

    /// One seeded run: sample the suffix shift s, emit the block-code
    /// instance, forward the witness when the suffix-hit search succeeds.
    pub fn run(&self, seed: u64) -> MdpInstance {
        self.build(seed, true)
    }

    fn build(&self, seed: u64, forward: bool) -> MdpInstance {
        let n = self.inst.a.rows;
        let q = self.inst.a.cols;
        let h = self.lsdc.code.length();
        let ml = self.lsdc.code.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: Vec<u8> = (0..h - q).map(|_| rng.gen_range(0..2u8)).collect();
        let mut generator = self.template.clone();
        for (i, &bit) in s.iter().enumerate() {
            generator.set(n + q + i, ml, bit as u64);
        }
        let witness = if forward {
            self.forward_witness(&s, ml, q)
        } else {
            None
        };
        MdpInstance {
            generator,
            k: self.k_out,
            witness,
        }
    }

    fn forward_witness(&self, s: &[u8], ml: usize, q: usize) -> Option<Witness> {
        let Some(Witness::Binary { x }) = &self.inst.witness else {
            return None;
        };
        let z = self.searcher.hit(x, s, self.lsdc.params.r)?;
        // message = x ∘ (systematic part of z), plus the affine marker 1
        let mut msg: Vec<u8> = x.clone();
        msg.extend_from_slice(&z[..ml - q]);
        msg.push(1);
        Some(Witness::Binary { x: msg })
    }

    pub fn run_traced(&self, seed: u64) -> (MdpInstance, ReductionTrace) {
        let out = self.run(seed);
        let mut params = Map::new();
        params.insert("d".into(), json!(self.d));
        params.insert("h".into(), json!(self.lsdc.params.h));
        params.insert("delta".into(), json!(self.lsdc.params.delta));
        params.insert("toy".into(), json!(self.lsdc.params.toy));
        params.insert(
            "gap_ratio".into(),
            json!(format!("{}k vs 2.5t = {}", self.k_out, 2.5 * self.t as f64)),
        );
        let forwarded = out.witness.is_some();
        let tr = trace(
            "snc_to_mdp",
            &self.inst,
            &out,
            Some(seed),
            self.t,
            self.k_out,
            params,
            forwarded,
        );
        (out, tr)
    }
}

/// One-shot convenience wrapper around [`SncToMdp`].
pub fn snc_to_mdp(
    inst: &SncInstance,
    seed: u64,
    toy_h: Option<u64>,
) -> Result<(MdpInstance, ReductionTrace)> {
    Ok(SncToMdp::new(inst, toy_h)?.run_traced(seed))
}

/// Tensor gap amplification: generator ⊗ generator, k′ = k².
pub fn mdp_tensor(inst: &MdpInstance, budget: u64) -> Result<(MdpInstance, ReductionTrace)> {
    let m = inst.generator.cols as u64;
    if m * m > budget {
        return Err(Error::Budget {
            what: "mdp_tensor output dimension".into(),
            explored: m * m,
            budget,
        });
    }
    let generator = tensor_generator(&inst.generator, &inst.generator)?;
    let witness = inst.witness.clone().and_then(|w| match w {
        Witness::Binary { x } => {
            let mut t = vec![0u8; x.len() * x.len()];
            for (i, &a) in x.iter().enumerate() {
                for (j, &b) in x.iter().enumerate() {
                    t[i * x.len() + j] = a & b;
                }
            }
            Some(Witness::Binary { x: t })
        }
        _ => None,
    });
    let out = MdpInstance {
        generator,
        k: inst.k * inst.k,
        witness: witness.clone(),
    };
    let tr = trace(
        "mdp_tensor",
        inst,
        &out,
        None,
        inst.k,
        inst.k * inst.k,
        Map::new(),
        witness.is_some(),
    );
    Ok((out, tr))
}

/// Result of the generic two-stage success amplifier.
#[derive(Clone, Debug, Serialize)]
pub struct AmplifiedVerdict {
    pub accepted: bool,
    /// runs OR-ed inside each block: ceil(10 / base_success)
    pub or_block_size: u64,
    /// majority rounds: ceil(100 * log2(problem_size))
    pub majority_rounds: u64,
    pub successes: u64,
    pub total_runs: u64,
}

/// Amplify a one-sided procedure with per-run success >= `base_success`:
/// OR within blocks of `ceil(10 / base_success)` runs, majority across
/// `ceil(100 * log2(problem_size))` blocks. Seeds are derived from
/// `master_seed` by run index.
pub fn amplified_run(
    mut procedure: impl FnMut(u64) -> bool,
    base_success: Ratio<u64>,
    problem_size: u64,
    master_seed: u64,
) -> Result<AmplifiedVerdict> {
    if base_success <= Ratio::from_integer(0) || base_success > Ratio::from_integer(1) {
        return Err(Error::validation(
            "amplified_run: base_success must lie in (0, 1]",
        ));
    }
    let or_block_size = (Ratio::from_integer(10u64) / base_success).ceil().to_integer();
    let majority_rounds = if problem_size <= 2 {
        1
    } else {
        let log2 = 64 - (problem_size - 1).leading_zeros() as u64; // ceil(log2 n)
        100 * log2
    };
    if base_success == Ratio::from_integer(1) {
        // single run suffices
        let ok = procedure(crate::pipeline::derive_seed(master_seed, 0));
        return Ok(AmplifiedVerdict {
            accepted: ok,
            or_block_size: 1,
            majority_rounds: 1,
            successes: ok as u64,
            total_runs: 1,
        });
    }
    let mut successes = 0u64;
    let mut block_hits = 0u64;
    let mut run_idx = 0u64;
    for _ in 0..majority_rounds {
        let mut block_ok = false;
        for _ in 0..or_block_size {
            let ok = procedure(crate::pipeline::derive_seed(master_seed, run_idx));
            run_idx += 1;
            if ok {
                successes += 1;
                block_ok = true;
            }
        }
        if block_ok {
            block_hits += 1;
        }
    }
    Ok(AmplifiedVerdict {
        accepted: 2 * block_hits > majority_rounds,
        or_block_size,
        majority_rounds,
        successes,
        total_runs: run_idx,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matspace::rank;
    use crate::oracles::{
        lds_oracle, mdp_oracle, mld_oracle, snc_oracle, MdpMode,
    };
    use crate::problems::{check_dependency, gen_planted, GapInstance, PlantSpec};

    #[test]
    fn clique_params_frozen_values() {
        let p = clique_params(5, 1).unwrap();
        assert_eq!(p.s, BigInt::from(10));
        let mut expected = BigInt::one();
        for i in 1..=11u32 {
            expected *= BigInt::from(i);
        }
        let h1 = expected.clone() * BigInt::from(25).pow(25);
        assert_eq!(p.h, h1);
        assert!(p.padding_advisory.is_none()); // 6 | 6

        let p2 = clique_params(5, 2).unwrap();
        assert_eq!(p2.h, expected * BigInt::from(50).pow(25));

        let p1 = clique_params(1, 1).unwrap();
        assert!(p1.degenerate);
        assert_eq!(p1.s, BigInt::from(0));

        assert!(clique_params(4, 1).unwrap().padding_advisory == Some(5));
        assert!(clique_params(0, 1).is_err());
    }

    #[test]
    fn vandermonde_rank_properties() {
        // any h-1 of the embeddings independent, any h dependent
        for q in [5u64, 7, 11, 13] {
            let f = field_make(q, 1).unwrap();
            for h in 2..=4usize {
                let vecs: Vec<Vec<u64>> = (0..q)
                    .map(|v| vandermonde_block(&f, v, h - 1, h - 1))
                    .collect();
                for sub in enumerate_subsets(q as usize, h - 1, 1 << 20).unwrap() {
                    let rows: Vec<Vec<u64>> = sub.iter().map(|&i| vecs[i].clone()).collect();
                    let m = FieldMatrix::from_rows(f.clone(), &rows).unwrap();
                    assert_eq!(rank(&m), h - 1);
                }
                for sub in enumerate_subsets(q as usize, h, 1 << 20).unwrap() {
                    let rows: Vec<Vec<u64>> = sub.iter().map(|&i| vecs[i].clone()).collect();
                    let m = FieldMatrix::from_rows(f.clone(), &rows).unwrap();
                    assert!(rank(&m) < h);
                }
            }
        }
    }

    #[test]
    fn bsmd_to_lds_k23_shape_and_dependency() {
        let (inst, _) = gen_planted(
            &PlantSpec::Bsmd {
                left: 2,
                right: 3,
                s: 2,
                h: 3,
            },
            1,
        )
        .unwrap();
        let GapInstance::Bsmd(mut b) = inst else { panic!() };
        // make it exactly K_{2,3}
        b.edges = vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
        b.witness = Some(Witness::Biclique {
            left: vec![0, 1],
            right: vec![2, 3, 4],
        });
        let (lds, tr) = bsmd_to_lds(&b, 7).unwrap();
        assert_eq!(lds.w.len(), 6);
        assert_eq!(lds.k, 6);
        assert_eq!(lds.w[0].len(), 35); // q * B = 7 * 5
        assert!(tr.witness_forwarded);
        let Some(Witness::Dependency { indices, coeffs }) = &lds.witness else { panic!() };
        assert_eq!(indices.len(), 6);
        assert!(check_dependency(&lds.field, &lds.w, indices, coeffs));
        // the oracle also finds a small dependent subset
        let v = lds_oracle(&lds, 6, 1 << 20).unwrap();
        assert_eq!(v.optimum, Some(6));
    }

    #[test]
    fn bsmd_to_lds_rejects_bad_parameters() {
        let b = BsmdInstance {
            left: vec![0],
            right: vec![1],
            edges: vec![(0, 1)],
            s: 1,
            h: 1,
            witness: None,
        };
        assert!(bsmd_to_lds(&b, 7).is_err()); // degenerate s
        let b2 = BsmdInstance {
            left: (0..4).collect(),
            right: (4..8).collect(),
            edges: vec![(0, 4)],
            s: 2,
            h: 2,
            witness: None,
        };
        assert!(bsmd_to_lds(&b2, 7).is_err()); // q <= vertex count
    }

    #[test]
    fn perfect_hash_families() {
        // (4,2): the bit-function family is exactly {1212, 1122}
        let fam = perfect_hash_build(4, 2, 1 << 20).unwrap();
        assert_eq!(fam, vec![vec![1, 2, 1, 2], vec![1, 1, 2, 2]]);
        // (k,k) identity, (3,1) constant
        assert_eq!(perfect_hash_build(3, 3, 1 << 20).unwrap(), vec![vec![1, 2, 3]]);
        assert_eq!(perfect_hash_build(3, 1, 1 << 20).unwrap(), vec![vec![1, 1, 1]]);
        // a nontrivial family covers every subset
        let n = 7;
        let k = 3u64;
        let fam = perfect_hash_build(n, k, 1 << 20).unwrap();
        for sub in enumerate_subsets(n, k as usize, 1 << 20).unwrap() {
            assert!(fam.iter().any(|f| {
                let cs: std::collections::HashSet<u64> = sub.iter().map(|&i| f[i]).collect();
                cs.len() == sub.len()
            }));
        }
    }

    #[test]
    fn lds_color_forwards_planted_witness() {
        let (inst, _) = gen_planted(
            &PlantSpec::Lds {
                p: 5,
                d: 1,
                m: 3,
                k: 3,
                extra: 2,
            },
            3,
        )
        .unwrap();
        let GapInstance::Lds(lds) = inst else { panic!() };
        let (colored, tr) = lds_color(&lds, 1 << 20).unwrap();
        assert!(tr.witness_forwarded);
        let Some(Witness::Dependency { indices, coeffs }) = &colored.witness else { panic!() };
        // distinct colors and still vanishing
        let cs: std::collections::HashSet<u64> =
            indices.iter().map(|&i| colored.colors[i]).collect();
        assert_eq!(cs.len(), 3);
        assert!(check_dependency(&colored.field, &colored.w, indices, coeffs));
        assert_eq!(colored.k, lds.k);
    }

    #[test]
    fn lds_to_mld_simple_f4_planted() {
        let (inst, _) = gen_planted(
            &PlantSpec::Lds {
                p: 2,
                d: 2,
                m: 2,
                k: 2,
                extra: 0,
            },
            17,
        )
        .unwrap();
        let GapInstance::Lds(lds) = inst else { panic!() };
        let (colored, _) = lds_color(&lds, 1 << 20).unwrap();
        let (mld, tr) = lds_to_mld_simple(&colored).unwrap();
        assert_eq!(mld.a.cols, colored.w.len() * 3); // (2^d - 1) per vector
        assert!(tr.witness_forwarded);
        let v = mld_oracle(&mld, 2, true, 1 << 20).unwrap();
        assert_eq!(v.optimum, Some(2));
        // forwarded witness solves exactly
        let Some(Witness::Binary { x }) = &mld.witness else { panic!() };
        let xf: Vec<u64> = x.iter().map(|&b| b as u64).collect();
        let mut xv = xf.clone();
        xv.resize(mld.a.cols, 0);
        assert_eq!(mld.a.mul_vec(&xv).unwrap(), mld.y);
    }

    #[test]
    fn lds_to_mld_strong_f4_planted() {
        let (inst, _) = gen_planted(
            &PlantSpec::Lds {
                p: 2,
                d: 2,
                m: 2,
                k: 2,
                extra: 0,
            },
            23,
        )
        .unwrap();
        let GapInstance::Lds(lds) = inst else { panic!() };
        let (colored, _) = lds_color(&lds, 1 << 20).unwrap();
        let (mld, tr) = lds_to_mld(&colored, 1 << 20).unwrap();
        let ell: u64 = tr.params["ell"].as_u64().unwrap();
        assert_eq!(ell, 4); // (d(p-1))^k = 2^2
        assert!(tr.witness_forwarded);
        let v = mld_oracle(&mld, 2, true, 1 << 22).unwrap();
        assert_eq!(v.optimum, Some(2));
    }

    #[test]
    fn lds_to_mld_degenerates_over_f2() {
        let (inst, _) = gen_planted(
            &PlantSpec::Lds {
                p: 2,
                d: 1,
                m: 2,
                k: 3,
                extra: 0,
            },
            29,
        )
        .unwrap();
        let GapInstance::Lds(lds) = inst else { panic!() };
        let (colored, _) = lds_color(&lds, 1 << 20).unwrap();
        let (mld, tr) = lds_to_mld(&colored, 1 << 20).unwrap();
        assert_eq!(tr.params["ell"].as_u64().unwrap(), 1);
        assert_eq!(mld.a.cols, colored.w.len());
        assert_eq!(mld_oracle(&mld, 3, true, 1 << 20).unwrap().optimum, Some(3));
    }

    #[test]
    fn mld_to_snc_example() {
        let f2 = field_make(2, 1).unwrap();
        let inst = MldInstance {
            a: FieldMatrix::identity(f2, 2),
            y: vec![1, 1],
            k: 2,
            witness: Some(Witness::Binary { x: vec![1, 1] }),
        };
        let (snc, tr) = mld_to_snc(&inst, Ratio::from_integer(1)).unwrap();
        assert_eq!(tr.params["a"].as_u64().unwrap(), 3);
        assert_eq!(snc.a.rows, 6);
        assert_eq!(snc_oracle(&snc, 6, 1 << 10).unwrap().optimum, Some(2));
    }

    #[test]
    fn mld_to_oddset_example() {
        let f2 = field_make(2, 1).unwrap();
        let inst = MldInstance {
            a: FieldMatrix::identity(f2, 2),
            y: vec![1, 0],
            k: 1,
            witness: Some(Witness::Binary { x: vec![1, 0] }),
        };
        let (odd, _) = mld_to_oddset(
            &inst,
            Ratio::from_integer(2),
            Ratio::from_integer(3),
        )
        .unwrap();
        assert_eq!(odd.k, 2);
        assert_eq!(odd.a.col(2), vec![0, 1, 1]);
        let Some(Witness::Binary { x }) = &odd.witness else { panic!() };
        assert_eq!(x, &vec![1, 0, 1]);
        let xf: Vec<u64> = x.iter().map(|&b| b as u64).collect();
        assert!(odd.a.mul_vec(&xf).unwrap().iter().all(|&v| v == 1));
    }

    #[test]
    fn snc_to_mdp_parameter_formula() {
        assert_eq!(smallest_odd_above_2_5(1), 3);
        assert_eq!(smallest_odd_above_2_5(2), 7);
        assert_eq!(smallest_odd_above_2_5(3), 9);
        assert_eq!(smallest_odd_above_2_5(4), 11);
        // t=2 -> d=7, k = 2 + 3 = 5
        let f2 = field_make(2, 1).unwrap();
        let inst = SncInstance {
            a: FieldMatrix::identity(f2, 2),
            y: vec![1, 1],
            k: 2,
            witness: Some(Witness::Binary { x: vec![1, 1] }),
        };
        let red = SncToMdp::new(&inst, Some(15)).unwrap();
        assert_eq!(red.d, 7);
        assert_eq!(red.k_out, 5);
    }

    #[test]
    fn snc_to_mdp_forwarded_witness_verifies() {
        let f2 = field_make(2, 1).unwrap();
        let inst = SncInstance {
            a: FieldMatrix::identity(f2, 2),
            y: vec![1, 1],
            k: 2,
            witness: Some(Witness::Binary { x: vec![1, 1] }),
        };
        let red = SncToMdp::new(&inst, Some(15)).unwrap();
        let mut hits = 0;
        for seed in 0..200u64 {
            let out = red.run(seed);
            if let Some(Witness::Binary { x }) = &out.witness {
                hits += 1;
                let xf: Vec<u64> = x.iter().map(|&b| b as u64).collect();
                let cw = out.generator.mul_vec(&xf).unwrap();
                let w = cw.iter().filter(|&&c| c == 1).count() as u64;
                assert!(w <= red.k_out, "weight {w} > k' = {}", red.k_out);
            }
        }
        assert!(hits > 0, "no suffix hit in 200 seeds");
        // empirical rate clears the promised density
        assert!(hits as f64 / 200.0 >= red.lsdc.params.delta - 0.1);
    }

    #[test]
    fn mdp_tensor_squares_distance_and_parameter() {
        let f2 = field_make(2, 1).unwrap();
        // distance-2 toy code
        let g = FieldMatrix::from_rows(f2, &[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let inst = MdpInstance {
            generator: g,
            k: 2,
            witness: Some(Witness::Binary { x: vec![1, 0] }),
        };
        let (t1, tr) = mdp_tensor(&inst, 1 << 20).unwrap();
        assert_eq!(tr.k_out, 4);
        assert_eq!(
            mdp_oracle(&t1, 9, MdpMode::Primal, 1 << 20).unwrap().optimum,
            Some(4)
        );
        let Some(Witness::Binary { x }) = &t1.witness else { panic!() };
        let xf: Vec<u64> = x.iter().map(|&b| b as u64).collect();
        let w = t1.generator.mul_vec(&xf).unwrap().iter().filter(|&&c| c == 1).count();
        assert_eq!(w, 4);
        // second round: distance 16
        let (t2, _) = mdp_tensor(&t1, 1 << 20).unwrap();
        assert_eq!(t2.k, 16);
        assert_eq!(
            mdp_oracle(&t2, 81, MdpMode::Primal, 1 << 20).unwrap().optimum,
            Some(16)
        );
    }

    #[test]
    fn amplifier_examples() {
        // base_success = 1: single run
        let v = amplified_run(|_| true, Ratio::from_integer(1), 1000, 0).unwrap();
        assert!(v.accepted);
        assert_eq!(v.total_runs, 1);
        // base_success = 0 rejected
        assert!(amplified_run(|_| true, Ratio::from_integer(0), 10, 0).is_err());
        // 0.3-coin: aggregate success should be essentially certain;
        // check 50 meta-trials
        let mut ok = 0;
        for meta in 0..50u64 {
            let v = amplified_run(
                |seed| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.gen_bool(0.3)
                },
                Ratio::new(3, 10),
                1 << 10,
                meta,
            )
            .unwrap();
            if v.accepted {
                ok += 1;
            }
        }
        assert!(ok >= 45, "aggregate success too low: {ok}/50");
    }

    #[test]
    fn traces_are_fpt_and_carry_digests() {
        let (inst, _) = gen_planted(
            &PlantSpec::Lds {
                p: 2,
                d: 1,
                m: 3,
                k: 3,
                extra: 1,
            },
            31,
        )
        .unwrap();
        let GapInstance::Lds(lds) = inst else { panic!() };
        let (colored, tr1) = lds_color(&lds, 1 << 20).unwrap();
        assert_eq!(tr1.k_out, tr1.k_in);
        let (mld, tr2) = lds_to_mld(&colored, 1 << 20).unwrap();
        assert_eq!(tr2.k_out, tr2.k_in);
        let (snc, tr3) = mld_to_snc(&mld, Ratio::from_integer(3)).unwrap();
        assert_eq!(tr3.k_out, tr3.k_in);
        let red = SncToMdp::new(&snc, Some(31)).unwrap();
        let (_, tr4) = red.run_traced(7);
        // k' = t + (d-1)/2 depends on t alone
        assert_eq!(tr4.k_out, snc.k + (smallest_odd_above_2_5(snc.k) - 1) / 2);
        for tr in [&tr1, &tr2, &tr3, &tr4] {
            assert_eq!(tr.input_digest.len(), 64);
            assert_ne!(tr.input_digest, tr.output_digest);
        }
        assert_eq!(tr4.seed, Some(7));
    }
}
