//! Instance types for every gap problem in the reduction chain, planted-YES
//! generators, validation, and canonical JSON serialization.
//!
//! Witnesses travel with instances as optional attachments: the reductions
//! are certified by witness forwarding, so the witness map is first-class.
//! NO status is never stored on an instance — only an oracle run asserts it.

use crate::error::{Error, Result};
use crate::galois::{field_make, FieldSpec};
use crate::matspace::{norm, rank, FieldMatrix, IntMatrix, NormSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A solution attachment. Which variant applies depends on the problem kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Witness {
    /// BSMD: a complete biclique, as vertex ids.
    Biclique { left: Vec<u64>, right: Vec<u64> },
    /// LDS / ColoredLDS: indices into `w` plus the nonzero coefficients of
    /// the vanishing combination.
    Dependency {
        indices: Vec<usize>,
        coeffs: Vec<u64>,
    },
    /// MLD / SNC / MDP / OddSet: a binary assignment (message or solution).
    Binary { x: Vec<u8> },
    /// NVP / SVP: integer coefficients against the instance basis.
    Integral { x: Vec<BigInt> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsmdInstance {
    pub left: Vec<u64>,
    pub right: Vec<u64>,
    pub edges: Vec<(u64, u64)>,
    /// demanded degree of kept right vertices
    pub s: u64,
    /// demanded degree of kept left vertices
    pub h: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl BsmdInstance {
    /// The parameter of the gap problem.
    pub fn k(&self) -> u64 {
        self.s + self.h
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LdsInstance {
    pub field: FieldSpec,
    /// vector set W, duplicates forbidden
    pub w: Vec<Vec<u64>>,
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredLdsInstance {
    pub field: FieldSpec,
    pub w: Vec<Vec<u64>>,
    /// colors in 1..=k, parallel to `w`
    pub colors: Vec<u64>,
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MldInstance {
    /// over a prime field; `a.spec` is the field
    pub a: FieldMatrix,
    pub y: Vec<u64>,
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SncInstance {
    /// over F_2
    pub a: FieldMatrix,
    pub y: Vec<u64>,
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdpInstance {
    /// over F_2, block length × dimension
    pub generator: FieldMatrix,
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddSetInstance {
    /// over F_2; the target is implicitly the all-ones vector
    pub a: FieldMatrix,
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NvpInstance {
    pub basis: IntMatrix,
    pub target: Vec<BigInt>,
    pub k: u64,
    pub norm: NormSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SvpInstance {
    pub basis: IntMatrix,
    /// threshold on the p-th-power norm; rational because the final-lattice
    /// construction produces one
    pub k: BigRational,
    pub norm: NormSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Tagged union of every problem in the chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GapInstance {
    Bsmd(BsmdInstance),
    Lds(LdsInstance),
    ColoredLds(ColoredLdsInstance),
    Mld(MldInstance),
    Snc(SncInstance),
    Mdp(MdpInstance),
    OddSet(OddSetInstance),
    Nvp(NvpInstance),
    Svp(SvpInstance),
}

impl GapInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            GapInstance::Bsmd(_) => "bsmd",
            GapInstance::Lds(_) => "lds",
            GapInstance::ColoredLds(_) => "colored_lds",
            GapInstance::Mld(_) => "mld",
            GapInstance::Snc(_) => "snc",
            GapInstance::Mdp(_) => "mdp",
            GapInstance::OddSet(_) => "odd_set",
            GapInstance::Nvp(_) => "nvp",
            GapInstance::Svp(_) => "svp",
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            GapInstance::Bsmd(i) => i.witness.as_ref(),
            GapInstance::Lds(i) => i.witness.as_ref(),
            GapInstance::ColoredLds(i) => i.witness.as_ref(),
            GapInstance::Mld(i) => i.witness.as_ref(),
            GapInstance::Snc(i) => i.witness.as_ref(),
            GapInstance::Mdp(i) => i.witness.as_ref(),
            GapInstance::OddSet(i) => i.witness.as_ref(),
            GapInstance::Nvp(i) => i.witness.as_ref(),
            GapInstance::Svp(i) => i.witness.as_ref(),
        }
    }
}

fn check_field_vectors(field: &FieldSpec, w: &[Vec<u64>], out: &mut Vec<String>) {
    let m = w.first().map_or(0, |v| v.len());
    for (i, v) in w.iter().enumerate() {
        if v.len() != m {
            out.push(format!("vector {i} has length {} != {m}", v.len()));
        }
        if v.iter().any(|&e| e >= field.size()) {
            out.push(format!("vector {i} has an out-of-field entry"));
        }
    }
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] == w[j] {
                out.push(format!("duplicate vectors at {i} and {j}"));
            }
        }
    }
}

/// All invariant violations of an instance; empty iff well-formed.
pub fn validate(inst: &GapInstance) -> Vec<String> {
    let mut out = Vec::new();
    match inst {
        GapInstance::Bsmd(i) => {
            if i.left.iter().any(|v| i.right.contains(v)) {
                out.push("left and right vertex sets intersect".into());
            }
            if i.s > i.h {
                out.push(format!("s = {} exceeds h = {}", i.s, i.h));
            }
            let mut seen = std::collections::HashSet::new();
            for &(u, v) in &i.edges {
                if !i.left.contains(&u) || !i.right.contains(&v) {
                    out.push(format!("edge ({u},{v}) has an unknown endpoint"));
                }
                if !seen.insert((u, v)) {
                    out.push(format!("duplicate edge ({u},{v})"));
                }
            }
        }
        GapInstance::Lds(i) => check_field_vectors(&i.field, &i.w, &mut out),
        GapInstance::ColoredLds(i) => {
            check_field_vectors(&i.field, &i.w, &mut out);
            if i.colors.len() != i.w.len() {
                out.push("colors not parallel to vector set".into());
            }
            if i.colors.iter().any(|&c| c == 0 || c > i.k) {
                out.push("color out of range 1..=k".into());
            }
        }
        GapInstance::Mld(i) => {
            if i.a.spec.d != 1 {
                out.push("MLD field must be prime".into());
            }
            if i.y.len() != i.a.rows {
                out.push(format!(
                    "target length {} != row count {}",
                    i.y.len(),
                    i.a.rows
                ));
            }
            if i.y.iter().any(|&e| e >= i.a.spec.size()) {
                out.push("target has an out-of-field entry".into());
            }
        }
        GapInstance::Snc(i) => {
            if i.a.spec.size() != 2 {
                out.push("SNC is over F_2".into());
            }
            if i.y.len() != i.a.rows {
                out.push("target length mismatch".into());
            }
        }
        GapInstance::Mdp(i) => {
            if i.generator.spec.size() != 2 {
                out.push("MDP is over F_2".into());
            }
            if i.generator.cols == 0 {
                out.push("zero-dimensional code".into());
            }
        }
        GapInstance::OddSet(i) => {
            if i.a.spec.size() != 2 {
                out.push("OddSet is over F_2".into());
            }
        }
        GapInstance::Nvp(i) => {
            if i.target.len() != i.basis.rows {
                out.push("target dimension mismatch".into());
            }
            if i.norm == NormSpec::LpPow(0) {
                out.push("p must be >= 1".into());
            }
        }
        GapInstance::Svp(i) => {
            if i.norm == NormSpec::LpPow(0) {
                out.push("p must be >= 1".into());
            }
            if i.k.is_negative() {
                out.push("negative threshold".into());
            }
            if i.basis.cols == 0 {
                out.push("empty basis".into());
            }
        }
    }
    out
}

/// Canonical JSON: compact, fields in declaration order, deterministic.
pub fn serialize(inst: &GapInstance) -> Result<String> {
    Ok(serde_json::to_string(inst)?)
}

pub fn deserialize(text: &str) -> Result<GapInstance> {
    Ok(serde_json::from_str(text)?)
}

/// What to plant. Every generator returns a YES instance together with the
/// planted witness, and the witness verifies under the matching oracle.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PlantSpec {
    /// K_{s,h} planted in a random bipartite graph with `left`/`right`
    /// vertices total.
    Bsmd {
        left: usize,
        right: usize,
        s: u64,
        h: u64,
    },
    /// A k-term vanishing combination with nonzero coefficients over
    /// F_{p^d}, padded with `extra` independent-looking vectors.
    Lds {
        p: u64,
        d: usize,
        m: usize,
        k: u64,
        extra: usize,
    },
    /// Binary x of weight k with A x = y over F_p.
    Mld {
        p: u64,
        n: usize,
        m: usize,
        k: u64,
    },
    /// A weight-k codeword in a random binary code.
    Mdp { n: usize, m: usize, k: u64 },
    /// x with ||Ax - y||_p^p = k.
    Nvp {
        n: usize,
        m: usize,
        k: u64,
        p: u32,
    },
    /// A planted short vector of p-th-power norm k.
    Svp { dim: usize, k: u64, p: u32 },
}

/// Decompose `k` as a sum of p-th powers, greedily; entries of the resulting
/// error vector.
fn pth_power_parts(k: u64, p: u32) -> Vec<u64> {
    let mut parts = Vec::new();
    let mut rem = k;
    while rem > 0 {
        let mut base = 1u64;
        while (base + 1).pow(p) <= rem {
            base += 1;
        }
        parts.push(base);
        rem -= base.pow(p);
    }
    parts
}

pub fn gen_planted(spec: &PlantSpec, seed: u64) -> Result<(GapInstance, Witness)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *spec {
        PlantSpec::Bsmd { left, right, s, h } => {
            if (s as usize) > left || (h as usize) > right || s == 0 || h == 0 || s > h {
                return Err(Error::validation("bsmd plant: need 0 < s <= h, s <= |L|, h <= |R|"));
            }
            let lverts: Vec<u64> = (0..left as u64).collect();
            let rverts: Vec<u64> = (left as u64..(left + right) as u64).collect();
            let mut lpick = lverts.clone();
            lpick.shuffle(&mut rng);
            let mut rpick = rverts.clone();
            rpick.shuffle(&mut rng);
            let bx: Vec<u64> = lpick[..s as usize].to_vec();
            let by: Vec<u64> = rpick[..h as usize].to_vec();
            let mut edges = Vec::new();
            for &u in &lverts {
                for &v in &rverts {
                    let planted = bx.contains(&u) && by.contains(&v);
                    if planted || rng.gen_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let witness = Witness::Biclique {
                left: bx,
                right: by,
            };
            let inst = BsmdInstance {
                left: lverts,
                right: rverts,
                edges,
                s,
                h,
                witness: Some(witness.clone()),
            };
            Ok((GapInstance::Bsmd(inst), witness))
        }
        PlantSpec::Lds { p, d, m, k, extra } => {
            let field = field_make(p, d)?;
            let total = k as usize + extra;
            if (field.size() as u128).pow(m as u32) < total as u128 {
                return Err(Error::validation("lds plant: field too small for distinct vectors"));
            }
            let mut w: Vec<Vec<u64>>;
            let coeffs: Vec<u64>;
            'outer: loop {
                let mut cand: Vec<Vec<u64>> = Vec::new();
                let cs: Vec<u64> = (0..k)
                    .map(|_| rng.gen_range(1..field.size()))
                    .collect();
                for _ in 0..k - 1 {
                    cand.push((0..m).map(|_| rng.gen_range(0..field.size())).collect());
                }
                // last planted vector balances the combination to zero
                let mut last = vec![0u64; m];
                for (v, &c) in cand.iter().zip(&cs) {
                    for (l, &e) in last.iter_mut().zip(v) {
                        *l = field.add(*l, field.mul(c, e));
                    }
                }
                let cinv = field.inv(*cs.last().expect("k >= 1"))?;
                for l in last.iter_mut() {
                    *l = field.mul(field.neg(*l), cinv);
                }
                cand.push(last);
                for i in 0..cand.len() {
                    for j in i + 1..cand.len() {
                        if cand[i] == cand[j] {
                            continue 'outer;
                        }
                    }
                }
                w = cand;
                coeffs = cs;
                break;
            }
            while w.len() < total {
                let v: Vec<u64> = (0..m).map(|_| rng.gen_range(0..field.size())).collect();
                if !w.contains(&v) {
                    w.push(v);
                }
            }
            let witness = Witness::Dependency {
                indices: (0..k as usize).collect(),
                coeffs,
            };
            let inst = LdsInstance {
                field,
                w,
                k,
                witness: Some(witness.clone()),
            };
            Ok((GapInstance::Lds(inst), witness))
        }
        PlantSpec::Mld { p, n, m, k } => {
            if k as usize > m {
                return Err(Error::validation("mld plant: k > m"));
            }
            let field = field_make(p, 1)?;
            let mut a = FieldMatrix::zeros(field.clone(), n, m);
            for e in a.data.iter_mut() {
                *e = rng.gen_range(0..field.size());
            }
            let mut support: Vec<usize> = (0..m).collect();
            support.shuffle(&mut rng);
            let mut x = vec![0u8; m];
            for &j in &support[..k as usize] {
                x[j] = 1;
            }
            let xf: Vec<u64> = x.iter().map(|&b| b as u64).collect();
            let y = a.mul_vec(&xf)?;
            let witness = Witness::Binary { x };
            let inst = MldInstance {
                a,
                y,
                k,
                witness: Some(witness.clone()),
            };
            Ok((GapInstance::Mld(inst), witness))
        }
        PlantSpec::Mdp { n, m, k } => {
            if k as u64 > n as u64 || m == 0 || k == 0 {
                return Err(Error::validation("mdp plant: need 0 < k <= n and m > 0"));
            }
            let field = field_make(2, 1)?;
            let mut g = FieldMatrix::zeros(field.clone(), n, m);
            for e in g.data.iter_mut() {
                *e = rng.gen_range(0..2);
            }
            // plant: pick a message with a live coordinate and solve that
            // column so the codeword is the chosen weight-k vector
            let mut msg = vec![0u8; m];
            while msg.iter().all(|&b| b == 0) {
                for b in msg.iter_mut() {
                    *b = rng.gen_range(0..2);
                }
            }
            let pivot = msg.iter().position(|&b| b == 1).expect("nonzero");
            let mut rows: Vec<usize> = (0..n).collect();
            rows.shuffle(&mut rng);
            let mut target = vec![0u64; n];
            for &i in &rows[..k as usize] {
                target[i] = 1;
            }
            for i in 0..n {
                let mut acc = target[i];
                for (j, &b) in msg.iter().enumerate() {
                    if j != pivot && b == 1 {
                        acc ^= g.get(i, j);
                    }
                }
                g.set(i, pivot, acc);
            }
            let witness = Witness::Binary { x: msg };
            let inst = MdpInstance {
                generator: g,
                k,
                witness: Some(witness.clone()),
            };
            Ok((GapInstance::Mdp(inst), witness))
        }
        PlantSpec::Nvp { n, m, k, p } => {
            if p == 0 {
                return Err(Error::validation("nvp plant: p >= 1"));
            }
            let parts = pth_power_parts(k, p);
            if parts.len() > n {
                return Err(Error::validation("nvp plant: k needs more error coordinates than n"));
            }
            let mut basis = IntMatrix::zeros(n, m);
            for e in basis.data.iter_mut() {
                *e = BigInt::from(rng.gen_range(-4i64..=4));
            }
            let x: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
            let mut err = vec![BigInt::zero(); n];
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut rng);
            for (&i, &part) in idx.iter().zip(&parts) {
                let sign = if rng.gen_bool(0.5) { 1i64 } else { -1 };
                err[i] = BigInt::from(sign * part as i64);
            }
            let ax = basis.mul_vec(&x)?;
            let y: Vec<BigInt> = ax.iter().zip(&err).map(|(a, e)| a - e).collect();
            debug_assert_eq!(norm(&err, &NormSpec::LpPow(p)), BigInt::from(k));
            let witness = Witness::Integral { x };
            let inst = NvpInstance {
                basis,
                target: y,
                k,
                norm: NormSpec::LpPow(p),
                witness: Some(witness.clone()),
            };
            Ok((GapInstance::Nvp(inst), witness))
        }
        PlantSpec::Svp { dim, k, p } => {
            if p == 0 || k == 0 {
                return Err(Error::validation("svp plant: p >= 1, k >= 1"));
            }
            let parts = pth_power_parts(k, p);
            if parts.len() > dim {
                return Err(Error::validation("svp plant: k needs more coordinates than dim"));
            }
            let mut v = vec![BigInt::zero(); dim];
            for (slot, &part) in v.iter_mut().zip(&parts) {
                let sign = if rng.gen_bool(0.5) { 1i64 } else { -1 };
                *slot = BigInt::from(sign * part as i64);
            }
            let mut basis = IntMatrix::zeros(dim, dim);
            for i in 0..dim {
                basis.set(i, 0, v[i].clone());
                for j in 1..dim {
                    // keep off-columns big so the plant is the short one
                    basis.set(i, j, BigInt::from(rng.gen_range(-30i64..=30) * 2 + i as i64));
                }
            }
            // mix the planted column into the rest by unimodular column ops,
            // tracking the witness coefficients
            let mut x = vec![BigInt::zero(); dim];
            x[0] = BigInt::from(1);
            for _ in 0..2 * dim {
                let i = rng.gen_range(0..dim);
                let j = rng.gen_range(0..dim);
                if i == j {
                    continue;
                }
                let c = BigInt::from(rng.gen_range(-2i64..=2));
                for row in 0..dim {
                    let t = basis.get(row, i) * &c;
                    let val = basis.get(row, j) + t;
                    basis.set(row, j, val);
                }
                // basis' = basis * E  =>  witness' solves basis' w = v with
                // w_i = x_i - c * x_j
                let t = &c * &x[j];
                x[i] -= t;
            }
            debug_assert_eq!(basis.mul_vec(&x)?, v);
            let witness = Witness::Integral { x };
            let inst = SvpInstance {
                basis,
                k: BigRational::from(BigInt::from(k)),
                norm: NormSpec::LpPow(p),
                witness: Some(witness.clone()),
            };
            Ok((GapInstance::Svp(inst), witness))
        }
    }
}

/// Verify a dependency witness against an LDS vector set: indices distinct,
/// coefficients nonzero, combination vanishes.
pub fn check_dependency(field: &FieldSpec, w: &[Vec<u64>], indices: &[usize], coeffs: &[u64]) -> bool {
    if indices.len() != coeffs.len() || indices.is_empty() {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !indices.iter().all(|&i| i < w.len() && seen.insert(i)) {
        return false;
    }
    if coeffs.iter().any(|&c| c == 0 || c >= field.size()) {
        return false;
    }
    let m = w[0].len();
    let mut acc = vec![0u64; m];
    for (&i, &c) in indices.iter().zip(coeffs) {
        for (a, &e) in acc.iter_mut().zip(&w[i]) {
            *a = field.add(*a, field.mul(c, e));
        }
    }
    acc.iter().all(|&a| a == 0)
}

/// Subset-size guard used by generators and reductions: smallest dependent
/// subset exists iff rank < |W| restricted appropriately; used in tests.
pub fn subset_is_dependent(field: &FieldSpec, w: &[Vec<u64>], indices: &[usize]) -> bool {
    let rows: Vec<Vec<u64>> = indices.iter().map(|&i| w[i].clone()).collect();
    match FieldMatrix::from_rows(field.clone(), &rows) {
        Ok(m) => rank(&m) < indices.len(),
        Err(_) => false,
    }
}
