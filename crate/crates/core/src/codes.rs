//! Linear codes: narrow-sense binary BCH construction, systematization,
//! exhaustive distance, and locally suffix-dense codes (LSDCs) — systematic
//! codes where, for any prefix, a random suffix center lands near a completing
//! codeword suffix with noticeable probability.

use crate::bits::{BitCols, BitVec, gray_toggles};
use crate::error::{Error, Result};
use crate::galois::{field_make, FieldSpec};
use crate::matspace::{kernel_basis, rank, FieldMatrix};
use num_bigint::BigUint;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A linear code presented by a generator matrix (block length × dimension:
/// codewords are `G * message`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearCode {
    pub generator: FieldMatrix,
    /// Designed (promised) minimum distance, when the construction gives one.
    pub designed_distance: Option<u64>,
    /// Set when the first `dim` rows form the identity.
    pub systematic: bool,
    /// `permutation[new_row] = original_row` applied during systematization.
    pub row_permutation: Option<Vec<usize>>,
}

impl LinearCode {
    pub fn new(generator: FieldMatrix) -> Self {
        LinearCode {
            generator,
            designed_distance: None,
            systematic: false,
            row_permutation: None,
        }
    }

    pub fn length(&self) -> usize {
        self.generator.rows
    }

    pub fn dim(&self) -> usize {
        self.generator.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.generator.spec
    }

    pub fn encode(&self, message: &[u64]) -> Result<Vec<u64>> {
        self.generator.mul_vec(message)
    }

    /// Parity check `H` with `c` a codeword iff `H c = 0`; rows are a basis of
    /// the dual code. Requires a full-column-rank generator.
    pub fn parity_check(&self) -> Result<FieldMatrix> {
        if rank(&self.generator) != self.dim() {
            return Err(Error::validation(
                "parity_check: generator is not full column rank",
            ));
        }
        Ok(kernel_basis(&self.generator.transpose()).transpose())
    }
}

fn poly_mul(f: &FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Minimal polynomial over F_2 of `beta` in `F_{2^t}`: product of
/// `(X - conjugate)` over the Frobenius orbit.
fn minimal_poly(f: &FieldSpec, beta: u64) -> Vec<u64> {
    let mut conjugates = vec![beta];
    let mut c = f.mul(beta, beta);
    while c != beta {
        conjugates.push(c);
        c = f.mul(c, c);
    }
    let mut poly = vec![1u64];
    for conj in conjugates {
        poly = poly_mul(f, &poly, &[conj, 1]); // X + conj, char 2
    }
    poly
}

/// Narrow-sense binary BCH code of block length `h` (with `h + 1` a power of
/// two) and designed distance `d`: the cyclic code whose generator polynomial
/// is the product of the minimal polynomials of `alpha, ..., alpha^{d-1}` for
/// a primitive `alpha` of `F_{h+1}`. Dimension is at least
/// `h - ((d-1)/2) * log2(h+1)` for odd `d`.
pub fn bch_generator(h: u64, d: u64) -> Result<LinearCode> {
    if h < 3 || !(h + 1).is_power_of_two() {
        return Err(Error::validation(format!(
            "bch_generator: h = {h} must satisfy h + 1 a power of two, h >= 3"
        )));
    }
    if d < 2 || d > h {
        return Err(Error::validation(format!(
            "bch_generator: designed distance d = {d} out of range 2..={h}"
        )));
    }
    let t = (h + 1).trailing_zeros() as usize;
    let field = field_make(2, t)?;
    let alpha = field.primitive_element();

    // one minimal polynomial per cyclotomic class hit by exponents 1..d-1
    let mut covered = vec![false; h as usize + 1];
    let mut g = vec![1u64];
    for i in 1..d {
        if covered[i as usize] {
            continue;
        }
        let mut e = i;
        loop {
            covered[e as usize] = true;
            e = e * 2 % h;
            if e == i {
                break;
            }
        }
        g = poly_mul(&field, &g, &minimal_poly(&field, field.pow(alpha, i)));
    }
    let deg = g.len() - 1;
    let m = h as usize - deg;
    if m == 0 {
        return Err(Error::validation(format!(
            "bch_generator: degenerate parameters (h = {h}, d = {d}) give a zero-dimensional code"
        )));
    }
    // generator polynomial coefficients are Frobenius-fixed, i.e. in F_2
    debug_assert!(g.iter().all(|&c| c <= 1));

    let f2 = field_make(2, 1)?;
    let mut gen = FieldMatrix::zeros(f2, h as usize, m);
    for j in 0..m {
        for (i, &c) in g.iter().enumerate() {
            gen.set(i + j, j, c); // column j holds X^j * g(X)
        }
    }
    Ok(LinearCode {
        generator: gen,
        designed_distance: Some(d),
        systematic: false,
        row_permutation: None,
    })
}

/// Equivalent presentation of the same code with the first `dim` rows the
/// identity: pick the first (in row order) maximal independent set of rows,
/// permute it to the top, and apply column operations. The recorded row
/// permutation maps systematic coordinates back to the original ones.
pub fn make_systematic(code: &LinearCode) -> Result<LinearCode> {
    let g = &code.generator;
    let f = g.spec.clone();
    let m = g.cols;

    // greedy first independent row set, by incremental elimination
    let mut basis: Vec<Vec<u64>> = Vec::new(); // reduced rows with pivot positions
    let mut pivot_of: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for i in 0..g.rows {
        let mut row = g.row(i).to_vec();
        for (b, &pc) in basis.iter().zip(&pivot_of) {
            if row[pc] != 0 {
                let factor = row[pc];
                for (rj, bj) in row.iter_mut().zip(b) {
                    *rj = f.sub(*rj, f.mul(factor, *bj));
                }
            }
        }
        if let Some(pc) = row.iter().position(|&v| v != 0) {
            let inv = f.inv(row[pc])?;
            for v in row.iter_mut() {
                *v = f.mul(*v, inv);
            }
            basis.push(row);
            pivot_of.push(pc);
            chosen.push(i);
            if chosen.len() == m {
                break;
            }
        }
    }
    if chosen.len() < m {
        return Err(Error::validation(
            "make_systematic: generator is not full column rank",
        ));
    }

    let mut permutation: Vec<usize> = chosen.clone();
    permutation.extend((0..g.rows).filter(|i| !chosen.contains(i)));

    let mut permuted = FieldMatrix::zeros(f.clone(), g.rows, m);
    for (new_i, &old_i) in permutation.iter().enumerate() {
        for j in 0..m {
            permuted.set(new_i, j, g.get(old_i, j));
        }
    }
    // right-multiply by the inverse of the top block
    let mut top = FieldMatrix::zeros(f.clone(), m, m);
    for i in 0..m {
        for j in 0..m {
            top.set(i, j, permuted.get(i, j));
        }
    }
    let inv = invert(&top)?;
    let sys = permuted.mul_mat(&inv)?;
    Ok(LinearCode {
        generator: sys,
        designed_distance: code.designed_distance,
        systematic: true,
        row_permutation: Some(permutation),
    })
}

fn invert(m: &FieldMatrix) -> Result<FieldMatrix> {
    let f = m.spec.clone();
    let n = m.rows;
    let aug = m.hstack(&FieldMatrix::identity(f.clone(), n))?;
    let mut a = aug;
    // Gauss-Jordan
    for col in 0..n {
        let Some(pr) = (col..n).find(|&r| a.get(r, col) != 0) else {
            return Err(Error::validation("invert: singular matrix"));
        };
        if pr != col {
            for j in 0..2 * n {
                let (x, y) = (a.get(col, j), a.get(pr, j));
                a.set(col, j, y);
                a.set(pr, j, x);
            }
        }
        let inv = f.inv(a.get(col, col))?;
        for j in 0..2 * n {
            a.set(col, j, f.mul(a.get(col, j), inv));
        }
        for r in 0..n {
            if r == col || a.get(r, col) == 0 {
                continue;
            }
            let factor = a.get(r, col);
            for j in 0..2 * n {
                let v = f.sub(a.get(r, j), f.mul(factor, a.get(col, j)));
                a.set(r, j, v);
            }
        }
    }
    let mut out = FieldMatrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, a.get(i, j + n));
        }
    }
    Ok(out)
}

/// Exact minimum distance by enumerating all nonzero messages. Errors with
/// [`Error::Budget`] when the message count exceeds `budget`.
pub fn code_distance(code: &LinearCode, budget: u64) -> Result<u64> {
    let m = code.dim();
    if m == 0 {
        return Err(Error::validation("code_distance: zero-dimensional code"));
    }
    let size = code.field().size();
    let total = size
        .checked_pow(m as u32)
        .filter(|&t| t - 1 <= budget)
        .ok_or_else(|| Error::Budget {
            what: "code_distance message enumeration".into(),
            explored: 0,
            budget,
        })?
        - 1;

    if size == 2 {
        // Gray-code walk over bit-packed columns
        let cols = to_bitcols(&code.generator);
        let mut acc = BitVec::zeros(code.length());
        let mut best = u64::MAX;
        for j in gray_toggles(m) {
            acc.xor_in(&cols.cols[j]);
            let w = acc.weight() as u64;
            if w > 0 && w < best {
                best = w;
            }
        }
        return Ok(best);
    }

    let mut best = u64::MAX;
    let mut msg = vec![0u64; m];
    for _ in 0..total {
        // odometer increment
        for digit in msg.iter_mut() {
            *digit += 1;
            if *digit == size {
                *digit = 0;
            } else {
                break;
            }
        }
        let cw = code.generator.mul_vec(&msg)?;
        let w = cw.iter().filter(|&&c| c != 0).count() as u64;
        if w > 0 && w < best {
            best = w;
        }
    }
    Ok(best)
}

/// Bit-packed columns of an F_2 matrix.
pub fn to_bitcols(m: &FieldMatrix) -> BitCols {
    assert_eq!(m.spec.size(), 2, "bit packing needs F_2");
    let mut out = BitCols::new(m.rows, m.cols);
    for j in 0..m.cols {
        for i in 0..m.rows {
            if m.get(i, j) == 1 {
                out.cols[j].set(i, true);
            }
        }
    }
    out
}

/// Parameters of a locally suffix-dense code over F_2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LsdcParams {
    pub h: u64,
    pub m: u64,
    pub q: u64,
    pub d: u64,
    /// Suffix ball radius, `(d - 1) / 2`.
    pub r: u64,
    /// Promised suffix-hit density `d^{-d/2}` (reporting only; certification
    /// elsewhere is exact).
    pub delta: f64,
    /// True when `h` was forced below the `10 d log2 d` floor, so the density
    /// promise is empirical rather than guaranteed.
    pub toy: bool,
}

/// A systematic BCH code packaged as an LSDC.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lsdc {
    pub code: LinearCode,
    pub params: LsdcParams,
}

/// Smallest `M` with `M >= 10 * d * log2(d)`, computed exactly
/// (`2^M >= d^{10d}`).
fn ceil_10_d_log2_d(d: u64) -> u64 {
    let rhs = BigUint::from(d).pow(10 * d as u32);
    let mut m = 0u64;
    let mut pow = BigUint::from(1u32);
    let two = BigUint::from(2u32);
    while pow < rhs {
        pow *= &two;
        m += 1;
    }
    m
}

/// Build an `(m, q, d, (d-1)/2, d^{-d/2})`-LSDC: the systematic narrow-sense
/// BCH code of designed distance `d` at the smallest admissible block length
/// `h` (`h + 1` a power of two, `h >= max(2q, ceil(10 d log2 d))`).
/// `toy_h` overrides the length floor for desk-scale experiments.
pub fn lsdc_build(q: u64, d: u64, toy_h: Option<u64>) -> Result<Lsdc> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::validation(format!(
            "lsdc_build: d = {d} must be odd and >= 3"
        )));
    }
    if q == 0 {
        return Err(Error::validation("lsdc_build: q must be positive"));
    }
    let (h, toy) = match toy_h {
        Some(h) => {
            if !(h + 1).is_power_of_two() || h <= q {
                return Err(Error::validation(format!(
                    "lsdc_build: toy h = {h} needs h + 1 a power of two and h > q = {q}"
                )));
            }
            (h, h < ceil_10_d_log2_d(d).max(2 * q))
        }
        None => {
            let floor = (2 * q).max(ceil_10_d_log2_d(d));
            let mut h = 3u64;
            while h < floor {
                h = 2 * h + 1;
            }
            (h, false)
        }
    };
    let code = make_systematic(&bch_generator(h, d)?)?;
    let m = code.dim() as u64;
    if m < q {
        return Err(Error::validation(format!(
            "lsdc_build: dimension {m} < prefix width {q}; increase h beyond {h}"
        )));
    }
    let delta = (d as f64).powf(-(d as f64) / 2.0);
    Ok(Lsdc {
        code,
        params: LsdcParams {
            h,
            m,
            q,
            d,
            r: (d - 1) / 2,
            delta,
            toy,
        },
    })
}

/// Precomputed syndrome tables for repeated suffix-hit queries against one
/// systematic F_2 code.
pub struct SuffixSearcher {
    n: usize,
    /// syndrome contribution of each coordinate (columns of the parity check)
    col_syndrome: Vec<BitVec>,
}

impl SuffixSearcher {
    pub fn new(code: &LinearCode) -> Result<Self> {
        if code.field().size() != 2 {
            return Err(Error::validation("SuffixSearcher: F_2 codes only"));
        }
        if !code.systematic {
            return Err(Error::validation("SuffixSearcher: code must be systematic"));
        }
        let h = code.parity_check()?;
        let cols = to_bitcols(&h);
        Ok(SuffixSearcher {
            n: code.length(),
            col_syndrome: cols.cols,
        })
    }

    /// First suffix `z` (by increasing flip count from `s`, flip supports in
    /// lexicographic order) with `x ∘ z` a codeword and `z` within Hamming
    /// distance `r` of `s`. `x` occupies the first `|x|` coordinates.
    pub fn hit(&self, x: &[u8], s: &[u8], r: u64) -> Option<Vec<u8>> {
        let q = x.len();
        assert_eq!(q + s.len(), self.n, "prefix + suffix must fill the block");
        let g = self.col_syndrome[0].len;
        let mut syn = BitVec::zeros(g);
        for (i, &b) in x.iter().enumerate() {
            if b != 0 {
                syn.xor_in(&self.col_syndrome[i]);
            }
        }
        for (j, &b) in s.iter().enumerate() {
            if b != 0 {
                syn.xor_in(&self.col_syndrome[q + j]);
            }
        }
        let mut flips = Vec::new();
        for radius in 0..=r as usize {
            if self.search(&syn, q, s.len(), radius, 0, &mut flips) {
                let mut z = s.to_vec();
                for &j in &flips {
                    z[j] ^= 1;
                }
                return Some(z);
            }
        }
        None
    }

    fn search(
        &self,
        syn: &BitVec,
        q: usize,
        suffix_len: usize,
        remaining: usize,
        from: usize,
        flips: &mut Vec<usize>,
    ) -> bool {
        if remaining == 0 {
            return syn.is_zero();
        }
        for j in from..suffix_len {
            let mut next = syn.clone();
            next.xor_in(&self.col_syndrome[q + j]);
            flips.push(j);
            if self.search(&next, q, suffix_len, remaining - 1, j + 1, flips) {
                return true;
            }
            flips.pop();
        }
        false
    }
}

/// One-shot suffix-hit query; builds the syndrome tables each call, so prefer
/// [`SuffixSearcher`] in loops.
pub fn lsdc_suffix_hit(lsdc: &Lsdc, x: &[u8], s: &[u8], r: u64) -> Result<Option<Vec<u8>>> {
    Ok(SuffixSearcher::new(&lsdc.code)?.hit(x, s, r))
}

/// Empirical suffix-hit density for prefix `x`: fraction of `trials` seeded
/// uniform centers s with a codeword suffix within distance `r`.
pub fn lsdc_density_estimate(
    lsdc: &Lsdc,
    x: &[u8],
    r: u64,
    trials: u64,
    seed: u64,
) -> Result<Ratio<u64>> {
    if trials == 0 {
        return Err(Error::validation("lsdc_density_estimate: trials must be > 0"));
    }
    let searcher = SuffixSearcher::new(&lsdc.code)?;
    let suffix_len = lsdc.code.length() - x.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..trials {
        let s: Vec<u8> = (0..suffix_len).map(|_| rng.gen_range(0..2u8)).collect();
        if searcher.hit(x, &s, r).is_some() {
            hits += 1;
        }
    }
    Ok(Ratio::new(hits, trials))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bch_15_5_frozen_parameters() {
        let c = bch_generator(15, 5).unwrap();
        assert_eq!((c.length(), c.dim()), (15, 7));
        assert_eq!(code_distance(&c, 1 << 20).unwrap(), 5);
    }

    #[test]
    fn bch_7_3_is_hamming() {
        let c = bch_generator(7, 3).unwrap();
        assert_eq!((c.length(), c.dim()), (7, 4));
        assert_eq!(code_distance(&c, 1 << 20).unwrap(), 3);
    }

    #[test]
    fn bch_31_11_frozen_parameters() {
        let c = bch_generator(31, 11).unwrap();
        assert_eq!((c.length(), c.dim()), (31, 11));
        assert_eq!(code_distance(&c, 1 << 20).unwrap(), 11);
    }

    #[test]
    fn bch_dimension_bound() {
        for (h, d) in [(15, 3), (15, 5), (15, 7), (31, 5), (31, 9), (63, 5)] {
            let c = bch_generator(h, d).unwrap();
            let t = (h + 1).trailing_zeros() as u64;
            assert!(
                c.dim() as u64 >= h - (d - 1) / 2 * t,
                "h={h} d={d} dim={}",
                c.dim()
            );
        }
    }

    #[test]
    fn bch_rejects_bad_length() {
        assert!(bch_generator(16, 5).is_err());
        assert!(bch_generator(15, 1).is_err());
    }

    #[test]
    fn systematic_form_preserves_the_code() {
        let c = bch_generator(15, 5).unwrap();
        let s = make_systematic(&c).unwrap();
        assert!(s.systematic);
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                assert_eq!(s.generator.get(i, j), u64::from(i == j));
            }
        }
        assert_eq!(code_distance(&s, 1 << 20).unwrap(), 5);
        // every systematic codeword, un-permuted, is an original codeword
        let perm = s.row_permutation.as_ref().unwrap();
        let h = c.parity_check().unwrap();
        for msg_bits in 1u64..1 << s.dim() {
            let msg: Vec<u64> = (0..s.dim()).map(|b| msg_bits >> b & 1).collect();
            let cw = s.encode(&msg).unwrap();
            let mut orig = vec![0u64; c.length()];
            for (new_i, &old_i) in perm.iter().enumerate() {
                orig[old_i] = cw[new_i];
            }
            assert!(h.mul_vec(&orig).unwrap().iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn parity_check_annihilates_generator() {
        let c = bch_generator(31, 5).unwrap();
        let h = c.parity_check().unwrap();
        assert_eq!(h.rows, 31 - c.dim());
        let prod = h.mul_mat(&c.generator).unwrap();
        assert!(prod.data.iter().all(|&v| v == 0));
    }

    #[test]
    fn exact_log_ceiling() {
        assert_eq!(ceil_10_d_log2_d(3), 48); // 10*3*log2(3) = 47.55
        assert_eq!(ceil_10_d_log2_d(4), 80);
        assert_eq!(ceil_10_d_log2_d(7), 197); // 10*7*log2(7) = 196.5
    }

    #[test]
    fn lsdc_build_frozen_shape() {
        let l = lsdc_build(4, 3, None).unwrap();
        assert_eq!(l.params.h, 63); // floor is max(8, 48) = 48
        assert_eq!(l.params.m, 57);
        assert_eq!(l.params.r, 1);
        assert!(!l.params.toy);

        let toy = lsdc_build(4, 3, Some(15)).unwrap();
        assert_eq!(toy.params.m, 11);
        assert!(toy.params.toy);
    }

    #[test]
    fn lsdc_rejects_even_distance_and_tiny_toy_h() {
        assert!(lsdc_build(4, 4, None).is_err());
        assert!(lsdc_build(8, 3, Some(7)).is_err()); // h <= q
    }

    #[test]
    fn suffix_hit_returns_nearest_codeword_suffix() {
        let l = lsdc_build(4, 3, Some(15)).unwrap();
        let searcher = SuffixSearcher::new(&l.code).unwrap();
        let cols = to_bitcols(&l.code.generator);
        // take a real codeword, perturb one suffix bit, and ask for radius 1
        let mut msg = BitVec::zeros(l.code.dim());
        msg.set(0, true);
        msg.set(5, true);
        let cw = cols.combine(&msg).to_bits();
        let (x, z_true) = cw.split_at(4);
        let mut s = z_true.to_vec();
        s[6] ^= 1;
        let z = searcher.hit(x, &s, 1).unwrap();
        assert_eq!(z, z_true);
        // radius 0 from an off-code center misses
        assert!(searcher.hit(x, &s, 0).is_none());
    }

    #[test]
    fn suffix_ball_disjointness_within_half_distance() {
        // codewords sharing a prefix have suffixes pairwise >= d apart, so
        // radius-r balls (2r < d) are disjoint
        let l = lsdc_build(4, 5, Some(15)).unwrap();
        let cols = to_bitcols(&l.code.generator);
        let q = l.params.q as usize;
        let mut by_prefix: std::collections::HashMap<Vec<u8>, Vec<Vec<u8>>> =
            std::collections::HashMap::new();
        let mut acc = BitVec::zeros(l.code.length());
        by_prefix
            .entry(vec![0; q])
            .or_default()
            .push(vec![0; l.code.length() - q]);
        for j in gray_toggles(l.code.dim()) {
            acc.xor_in(&cols.cols[j]);
            let bits = acc.to_bits();
            by_prefix
                .entry(bits[..q].to_vec())
                .or_default()
                .push(bits[q..].to_vec());
        }
        for suffixes in by_prefix.values() {
            for (i, a) in suffixes.iter().enumerate() {
                for b in &suffixes[i + 1..] {
                    let dist: u64 = a.iter().zip(b).map(|(x, y)| u64::from(x != y)).sum();
                    assert!(dist >= l.params.d);
                }
            }
        }
    }

    #[test]
    fn density_estimate_is_high_for_covering_radius_one() {
        // BCH(15,3) systematic with q = 4: hit rate should far exceed 3^-1.5
        let l = lsdc_build(4, 3, Some(15)).unwrap();
        let est = lsdc_density_estimate(&l, &[0, 1, 1, 0], 1, 2000, 7).unwrap();
        assert!(*est.numer() as f64 / *est.denom() as f64 > l.params.delta);
    }
}
