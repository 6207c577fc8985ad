//! Exact exterior algebra Lambda^*(Z^n) over the integers: canonical monomial
//! bases indexed by the combinatorial number system, wedge products with
//! signs, GL_n(Z) actions, and top-degree evaluation against the orientation
//! class of the n-torus.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMat;
use crate::{Error, Result};

/// Largest ambient rank supported; C(16,8) still fits dense vectors.
pub const MAX_RANK: u8 = 16;

/// Binomial coefficient C(n,k) for the small parameters used here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// A strictly increasing index tuple in 1..=n identifying a basis monomial
/// x_{i_1} ... x_{i_k}, together with its rank in the canonical ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    pub n: u8,
    pub indices: Vec<u8>,
}

impl MultiIndex {
    pub fn new(n: u8, indices: Vec<u8>) -> Result<Self> {
        if n == 0 || n > MAX_RANK {
            return Err(Error::Domain(format!("ambient rank {n} out of range 1..=16")));
        }
        for w in indices.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Domain(format!(
                    "indices not strictly increasing: {indices:?}"
                )));
            }
        }
        if let Some(&last) = indices.last() {
            if indices[0] < 1 || last > n {
                return Err(Error::Domain(format!(
                    "index out of range 1..={n}: {indices:?}"
                )));
            }
        }
        Ok(MultiIndex { n, indices })
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    /// Rank of this k-subset in the lexicographic ordering of increasing
    /// tuples (the combinatorial number system).
    pub fn rank_position(&self) -> usize {
        let n = self.n as usize;
        let k = self.indices.len();
        let mut rank = 0usize;
        let mut prev = 0usize;
        for (j, &ij) in self.indices.iter().enumerate() {
            for v in prev + 1..ij as usize {
                rank += binomial(n - v, k - j - 1);
            }
            prev = ij as usize;
        }
        rank
    }

    /// Inverse of `rank_position`.
    pub fn from_position(n: u8, k: usize, mut pos: usize) -> Result<Self> {
        let total = binomial(n as usize, k);
        if pos >= total {
            return Err(Error::Domain(format!(
                "position {pos} out of range for C({n},{k}) = {total}"
            )));
        }
        let mut indices = Vec::with_capacity(k);
        let mut v = 1usize;
        for j in 0..k {
            loop {
                let block = binomial(n as usize - v, k - j - 1);
                if pos < block {
                    indices.push(v as u8);
                    v += 1;
                    break;
                }
                pos -= block;
                v += 1;
            }
        }
        MultiIndex::new(n, indices)
    }
}

/// An integer-coefficient element of Lambda^k(Z^n) in the canonical monomial
/// basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KVector {
    pub n: u8,
    pub k: u8,
    pub coeffs: Vec<BigInt>,
}

impl KVector {
    pub fn zero(n: u8, k: u8) -> Result<Self> {
        if n == 0 || n > MAX_RANK {
            return Err(Error::Domain(format!("ambient rank {n} out of range 1..=16")));
        }
        if k > n {
            return Err(Error::Domain(format!("degree {k} exceeds rank {n}")));
        }
        let len = binomial(n as usize, k as usize);
        Ok(KVector { n, k, coeffs: vec![BigInt::zero(); len] })
    }

    /// The monomial coeff * x_{i_1}...x_{i_k}; indices need not be sorted and
    /// the sign of the sorting permutation is applied.
    pub fn monomial(n: u8, indices: &[u8], coeff: impl Into<BigInt>) -> Result<Self> {
        let mut ix = indices.to_vec();
        let mut sign = 1i8;
        // Bubble sort, counting swaps; a repeated index kills the term.
        for i in 0..ix.len() {
            for j in 0..ix.len().saturating_sub(i + 1) {
                if ix[j] > ix[j + 1] {
                    ix.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        if ix.windows(2).any(|w| w[0] == w[1]) {
            return KVector::zero(n, indices.len() as u8);
        }
        let mi = MultiIndex::new(n, ix)?;
        let mut v = KVector::zero(n, indices.len() as u8)?;
        let c: BigInt = coeff.into();
        v.coeffs[mi.rank_position()] = if sign < 0 { -c } else { c };
        Ok(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &KVector) -> Result<KVector> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::Domain("mismatched add".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(KVector { n: self.n, k: self.k, coeffs })
    }

    pub fn scale(&self, c: &BigInt) -> KVector {
        KVector {
            n: self.n,
            k: self.k,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> KVector {
        KVector {
            n: self.n,
            k: self.k,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Greatest common divisor of the coefficients (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = num_integer::gcd(g, c.abs());
        }
        g
    }

    /// Wedge product. Degree overflow (j + k > n) is an error: callers must
    /// stay in range, and a silent zero would mask bugs in pairing code.
    pub fn wedge(&self, other: &KVector) -> Result<KVector> {
        if self.n != other.n {
            return Err(Error::Domain("wedge of vectors with different rank".into()));
        }
        let kk = self.k as usize + other.k as usize;
        if kk > self.n as usize {
            return Err(Error::Domain(format!(
                "degree overflow: {} + {} > {}",
                self.k, other.k, self.n
            )));
        }
        let mut out = KVector::zero(self.n, kk as u8)?;
        let ka = self.k as usize;
        let kb = other.k as usize;
        for (ra, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let ma = MultiIndex::from_position(self.n, ka, ra)?;
            for (rb, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let mb = MultiIndex::from_position(self.n, kb, rb)?;
                if let Some((pos, sign)) = merge_monomials(&ma.indices, &mb.indices, self.n) {
                    let term = ca * cb;
                    if sign < 0 {
                        out.coeffs[pos] -= term;
                    } else {
                        out.coeffs[pos] += term;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The coefficient of x_1...x_n, i.e. evaluation against the orientation
    /// class [T] under the identification Lambda^n(Z^n) = Z.
    pub fn top_coefficient(&self) -> Result<BigInt> {
        if self.k != self.n {
            return Err(Error::Domain(format!(
                "top_coefficient needs degree {} = rank, got {}",
                self.n, self.k
            )));
        }
        Ok(self.coeffs[0].clone())
    }

    /// Serialize in the stable text format: a header `n=<n> k=<k>` followed by
    /// one line per nonzero term, `i1 i2 ... ik : coeff`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n={} k={}", self.n, self.k).unwrap();
        for (pos, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mi = MultiIndex::from_position(self.n, self.k as usize, pos).unwrap();
            let ix: Vec<String> = mi.indices.iter().map(|i| i.to_string()).collect();
            writeln!(s, "{} : {}", ix.join(" "), c).unwrap();
        }
        s
    }

    /// Parse the text format produced by `to_text`. Bit-exact round-trip.
    pub fn from_text(text: &str) -> Result<KVector> {
        let mut lines = text.lines().enumerate();
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
        let mut n = None;
        let mut k = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("n=") {
                n = v.parse::<u8>().ok();
            } else if let Some(v) = tok.strip_prefix("k=") {
                k = v.parse::<u8>().ok();
            }
        }
        let (n, k) = match (n, k) {
            (Some(n), Some(k)) => (n, k),
            _ => {
                return Err(Error::Parse {
                    line: hline + 1,
                    msg: format!("expected header `n=<n> k=<k>`, got `{header}`"),
                })
            }
        };
        let mut v = KVector::zero(n, k)?;
        for (lno, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (ixpart, cpart) = line.split_once(':').ok_or_else(|| Error::Parse {
                line: lno + 1,
                msg: "expected `i1 ... ik : coeff`".into(),
            })?;
            let indices: Vec<u8> = ixpart
                .split_whitespace()
                .map(|t| {
                    t.parse::<u8>().map_err(|_| Error::Parse {
                        line: lno + 1,
                        msg: format!("bad index `{t}`"),
                    })
                })
                .collect::<Result<_>>()?;
            if indices.len() != k as usize {
                return Err(Error::Parse {
                    line: lno + 1,
                    msg: format!("expected {k} indices, got {}", indices.len()),
                });
            }
            let coeff: BigInt = cpart.trim().parse().map_err(|_| Error::Parse {
                line: lno + 1,
                msg: format!("bad coefficient `{}`", cpart.trim()),
            })?;
            let term = KVector::monomial(n, &indices, coeff)?;
            v = v.add(&term)?;
        }
        Ok(v)
    }
}

/// Merge two strictly increasing index lists; returns the rank position of
/// the merged monomial and the permutation sign, or None on a repeated index.
fn merge_monomials(a: &[u8], b: &[u8], n: u8) -> Option<(usize, i8)> {
    let mut merged = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i8;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            merged.push(a[i]);
            i += 1;
        } else {
            // b[j] hops over the remaining a-elements.
            if (a.len() - i) % 2 == 1 {
                sign = -sign;
            }
            merged.push(b[j]);
            j += 1;
        }
    }
    merged.extend_from_slice(&a[i..]);
    merged.extend_from_slice(&b[j..]);
    let mi = MultiIndex::new(n, merged).ok()?;
    Some((mi.rank_position(), sign))
}

/// An element of GL_n(Z); construction verifies |det| = 1 exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    pub n: u8,
    pub matrix: IntMat,
    pub determinant: i8,
}

impl BasisChange {
    pub fn new(matrix: IntMat) -> Result<Self> {
        if matrix.rows != matrix.cols {
            return Err(Error::Domain("basis change must be square".into()));
        }
        let n = matrix.rows;
        if n == 0 || n > MAX_RANK as usize {
            return Err(Error::Domain(format!("rank {n} out of range 1..=16")));
        }
        let det = matrix.det_bareiss();
        let determinant = if det.is_one() {
            1
        } else if det == BigInt::from(-1) {
            -1
        } else {
            return Err(Error::Domain(format!(
                "matrix is not in GL_n(Z): det = {det}"
            )));
        };
        Ok(BasisChange { n: n as u8, matrix, determinant })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        BasisChange::new(IntMat::from_rows(rows))
    }

    pub fn identity(n: u8) -> Self {
        BasisChange { n, matrix: IntMat::identity(n as usize), determinant: 1 }
    }

    /// The image of the basis covector x_i, namely sum_j B_ij x_j.
    fn image_of_generator(&self, i: usize) -> KVector {
        let mut v = KVector::zero(self.n, 1).unwrap();
        for j in 0..self.n as usize {
            v.coeffs[j] = self.matrix.at(i, j).clone();
        }
        v
    }
}

/// The induced action of B on Lambda^k, extended multiplicatively from
/// B^*(x_i) = sum_j B_ij x_j.
pub fn gl_action(b: &BasisChange, u: &KVector) -> Result<KVector> {
    if b.n != u.n {
        return Err(Error::Domain("rank mismatch in gl_action".into()));
    }
    let k = u.k as usize;
    if k == 0 {
        return Ok(u.clone());
    }
    let images: Vec<KVector> = (0..u.n as usize).map(|i| b.image_of_generator(i)).collect();
    let mut out = KVector::zero(u.n, u.k)?;
    for (pos, c) in u.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mi = MultiIndex::from_position(u.n, k, pos)?;
        let mut term = images[(mi.indices[0] - 1) as usize].clone();
        for &ix in &mi.indices[1..] {
            term = term.wedge(&images[(ix - 1) as usize])?;
        }
        out = out.add(&term.scale(c))?;
    }
    Ok(out)
}

/// The pushforward of an orientation-dual class under the automorphism A,
/// namely det(A) * ((A^T)^{-1} acting on omega).
pub fn pushforward_omega(a: &BasisChange, omega: &KVector) -> Result<KVector> {
    if a.n != omega.n {
        return Err(Error::Domain("rank mismatch in pushforward".into()));
    }
    let inv_t = a.matrix.transpose().inverse_unimodular()?;
    let b = BasisChange::new(inv_t)?;
    let moved = gl_action(&b, omega)?;
    Ok(if a.determinant < 0 { moved.neg() } else { moved })
}

/// The C(n,2) x C(n,2) matrix of the induced action of B on Lambda^2, used
/// for congruence cross-checks of pairing forms.
pub fn induced_matrix_deg2(b: &BasisChange) -> Result<IntMat> {
    let n = b.n;
    let dim = binomial(n as usize, 2);
    let mut m = IntMat::zero(dim, dim);
    for s in 0..dim {
        let mut unit = KVector::zero(n, 2)?;
        unit.coeffs[s] = BigInt::one();
        let img = gl_action(b, &unit)?;
        for r in 0..dim {
            m.set(r, s, img.coeffs[r].clone());
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force product of two monomials: concatenate, sort by adjacent
    /// transpositions counting swaps, zero on repeats. Used as a sign oracle.
    pub fn oracle_product(n: u8, a: &[u8], b: &[u8]) -> Result<KVector> {
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        KVector::monomial(n, &all, 1)
    }

    #[test]
    fn codec_examples() {
        let m = MultiIndex::new(4, vec![1, 2]).unwrap();
        assert_eq!(m.rank_position(), 0);
        let m = MultiIndex::from_position(4, 2, 5).unwrap();
        assert_eq!(m.indices, vec![3, 4]);
        // Bijection for n=6, k=2.
        for pos in 0..binomial(6, 2) {
            let m = MultiIndex::from_position(6, 2, pos).unwrap();
            assert_eq!(m.rank_position(), pos);
        }
    }

    #[test]
    fn codec_rejects_out_of_range() {
        assert!(MultiIndex::new(4, vec![2, 2]).is_err());
        assert!(MultiIndex::new(4, vec![0, 1]).is_err());
        assert!(MultiIndex::new(4, vec![3, 5]).is_err());
        assert!(MultiIndex::from_position(4, 2, 6).is_err());
    }

    #[test]
    fn wedge_examples() {
        let n = 4;
        let x12 = KVector::monomial(n, &[1, 2], 1).unwrap();
        let x13 = KVector::monomial(n, &[1, 3], 1).unwrap();
        assert!(x12.wedge(&x13).unwrap().is_zero());

        let x13 = KVector::monomial(n, &[1, 3], 1).unwrap();
        let x24 = KVector::monomial(n, &[2, 4], 1).unwrap();
        let w = x13.wedge(&x24).unwrap();
        let want = KVector::monomial(n, &[1, 2, 3, 4], -1).unwrap();
        assert_eq!(w, want);

        let x34 = KVector::monomial(n, &[3, 4], 1).unwrap();
        let s = x12.add(&x34).unwrap();
        let sq = s.wedge(&s).unwrap();
        let want = KVector::monomial(n, &[1, 2, 3, 4], 2).unwrap();
        assert_eq!(sq, want);
    }

    #[test]
    fn wedge_overflow_is_error() {
        let x12 = KVector::monomial(4, &[1, 2], 1).unwrap();
        let x123 = KVector::monomial(4, &[1, 2, 3], 1).unwrap();
        assert!(x12.wedge(&x123).is_err());
    }

    #[test]
    fn omega_cubed_is_six() {
        let n = 6;
        let mut omega = KVector::zero(n, 2).unwrap();
        for pair in [[1, 2], [3, 4], [5, 6]] {
            omega = omega.add(&KVector::monomial(n, &pair, 1).unwrap()).unwrap();
        }
        let cubed = omega.wedge(&omega).unwrap().wedge(&omega).unwrap();
        assert_eq!(cubed.top_coefficient().unwrap(), BigInt::from(6));
    }

    #[test]
    fn wedge_matches_sign_oracle_exhaustively() {
        for n in 2u8..=6 {
            for j in 1..=2usize {
                for k in 1..=2usize {
                    if j + k > n as usize {
                        continue;
                    }
                    for ra in 0..binomial(n as usize, j) {
                        let ma = MultiIndex::from_position(n, j, ra).unwrap();
                        for rb in 0..binomial(n as usize, k) {
                            let mb = MultiIndex::from_position(n, k, rb).unwrap();
                            let va = KVector::monomial(n, &ma.indices, 1).unwrap();
                            let vb = KVector::monomial(n, &mb.indices, 1).unwrap();
                            let w = va.wedge(&vb).unwrap();
                            let o = oracle_product(n, &ma.indices, &mb.indices).unwrap();
                            assert_eq!(w, o, "n={n} {:?} {:?}", ma.indices, mb.indices);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gl_action_swap_and_substitution() {
        // Swap x1 <-> x2 sends x1x2 to -x1x2.
        let rows = vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ];
        let b = BasisChange::from_rows(&rows).unwrap();
        let x12 = KVector::monomial(4, &[1, 2], 1).unwrap();
        assert_eq!(gl_action(&b, &x12).unwrap(), x12.neg());

        // The divisibility substitution with a=2, b=3, c=1, p=-1, q=1:
        // x1 = x1' - bq x3', x2 = p x2' - b x4', x3 = x1' + ap x3',
        // x4 = q x2' + a x4' takes c(a x1x2 + b x3x4) to x1'x2' + ab x3'x4'.
        let (a, bb, p, q) = (2i64, 3i64, -1i64, 1i64);
        let rows = vec![
            vec![1, 0, -bb * q, 0],
            vec![0, p, 0, -bb],
            vec![1, 0, a * p, 0],
            vec![0, q, 0, a],
        ];
        let sub = BasisChange::from_rows(&rows).unwrap();
        let omega = KVector::monomial(4, &[1, 2], a)
            .unwrap()
            .add(&KVector::monomial(4, &[3, 4], bb).unwrap())
            .unwrap();
        let moved = gl_action(&sub, &omega).unwrap();
        let want = KVector::monomial(4, &[1, 2], 1)
            .unwrap()
            .add(&KVector::monomial(4, &[3, 4], a * bb).unwrap())
            .unwrap();
        assert_eq!(moved, want);
    }

    #[test]
    fn pushforward_examples() {
        let id = BasisChange::identity(6);
        let omega = KVector::monomial(6, &[1, 2], 1).unwrap();
        assert_eq!(pushforward_omega(&id, &omega).unwrap(), omega);

        let mut rows = vec![vec![0i64; 6]; 6];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = if i == 0 { -1 } else { 1 };
        }
        let a = BasisChange::from_rows(&rows).unwrap();
        // det(A) = -1 and (A^T)^{-1} negates x1, so the signs cancel.
        assert_eq!(pushforward_omega(&a, &omega).unwrap(), omega);
    }

    #[test]
    fn text_roundtrip() {
        let omega = KVector::monomial(6, &[1, 2], 2)
            .unwrap()
            .add(&KVector::monomial(6, &[3, 4], -3).unwrap())
            .unwrap();
        let text = omega.to_text();
        let back = KVector::from_text(&text).unwrap();
        assert_eq!(back, omega);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "n=6 k=2\n1 2 : x\n";
        match KVector::from_text(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
