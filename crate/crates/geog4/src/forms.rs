//! Exact invariants and classification of symmetric integer bilinear forms:
//! rank, b+/b-, signature, determinant, parity, unimodularity, Smith torsion,
//! the classification of indefinite unimodular forms, and mod-p Witt indices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMat;
use crate::{Error, Result};

/// A symmetric bilinear form on Z^dim given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymIntForm {
    pub dim: usize,
    pub gram: IntMat,
}

/// Whether every diagonal value F(v,v) is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// The complete invariant package of a `SymIntForm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariants {
    pub rank: usize,
    pub b_plus: usize,
    pub b_minus: usize,
    pub signature: i64,
    pub determinant: BigInt,
    pub parity: Parity,
    pub unimodular: bool,
    /// Elementary divisors greater than 1, in divisibility order.
    pub torsion: Vec<BigInt>,
}

/// Classification of an indefinite unimodular form per the classification
/// theorem: odd forms diagonalize over Z, even forms are k E8 + l H.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnimodularClass {
    Diagonal { plus: usize, minus: usize },
    Even { e8: i64, h: i64, rohlin_violation: bool },
}

impl fmt::Display for UnimodularClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnimodularClass::Diagonal { plus, minus } => {
                write!(f, "{plus}<+1> + {minus}<-1>")
            }
            UnimodularClass::Even { e8, h, rohlin_violation } => {
                if *e8 == 0 {
                    write!(f, "{h}H")?;
                } else {
                    write!(f, "{e8}E8+{h}H")?;
                }
                if *rohlin_violation {
                    write!(f, " (Rohlin-violating for smooth spin)")?;
                }
                Ok(())
            }
        }
    }
}

impl SymIntForm {
    pub fn new(gram: IntMat) -> Result<Self> {
        if gram.rows != gram.cols {
            return Err(Error::Domain("Gram matrix must be square".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::Domain("Gram matrix must be symmetric".into()));
        }
        Ok(SymIntForm { dim: gram.rows, gram })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        SymIntForm::new(IntMat::from_rows(rows))
    }

    /// The hyperbolic plane H.
    pub fn hyperbolic() -> SymIntForm {
        SymIntForm::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap()
    }

    /// The standard E8 Gram matrix (positive definite, even, unimodular).
    pub fn e8() -> SymIntForm {
        SymIntForm::from_rows(&[
            vec![2, -1, 0, 0, 0, 0, 0, 0],
            vec![-1, 2, -1, 0, 0, 0, 0, 0],
            vec![0, -1, 2, -1, 0, 0, 0, 0],
            vec![0, 0, -1, 2, -1, 0, 0, 0],
            vec![0, 0, 0, -1, 2, -1, 0, -1],
            vec![0, 0, 0, 0, -1, 2, -1, 0],
            vec![0, 0, 0, 0, 0, -1, 2, 0],
            vec![0, 0, 0, 0, -1, 0, 0, 2],
        ])
        .unwrap()
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &SymIntForm) -> SymIntForm {
        let d = self.dim + other.dim;
        let mut g = IntMat::zero(d, d);
        for i in 0..self.dim {
            for j in 0..self.dim {
                g.set(i, j, self.gram.at(i, j).clone());
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                g.set(self.dim + i, self.dim + j, other.gram.at(i, j).clone());
            }
        }
        SymIntForm { dim: d, gram: g }
    }

    /// Exact invariants. b+/b- come from congruence diagonalization over the
    /// rationals; when the remaining diagonal is all zero a hyperbolic pair is
    /// split off, contributing one +1 and one -1 (realized here by the
    /// row+column fold that turns an off-diagonal pivot into a 2x2 signature
    /// (+1,-1) contribution). Determinant is fraction-free, torsion comes
    /// from the Smith normal form.
    pub fn invariants(&self) -> FormInvariants {
        let (b_plus, b_minus) = self.diagonal_signs();
        let rank = b_plus + b_minus;
        let determinant = self.gram.det_bareiss();
        let parity = if (0..self.dim).all(|i| self.gram.at(i, i).is_even()) {
            Parity::Even
        } else {
            Parity::Odd
        };
        let torsion: Vec<BigInt> = self
            .gram
            .smith_divisors()
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect();
        FormInvariants {
            rank,
            b_plus,
            b_minus,
            signature: b_plus as i64 - b_minus as i64,
            unimodular: determinant.abs().is_one(),
            determinant,
            parity,
            torsion,
        }
    }

    fn diagonal_signs(&self) -> (usize, usize) {
        let d = self.dim;
        let mut a: Vec<BigRational> = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                a.push(BigRational::from(self.gram.at(i, j).clone()));
            }
        }
        let idx = |i: usize, j: usize| i * d + j;
        let mut plus = 0usize;
        let mut minus = 0usize;
        for t in 0..d {
            if a[idx(t, t)].is_zero() {
                // Prefer a later basis vector with nonzero self-pairing.
                let mut nz_diag = None;
                for i in t + 1..d {
                    if !a[idx(i, i)].is_zero() {
                        nz_diag = Some(i);
                        break;
                    }
                }
                if let Some(i) = nz_diag {
                    for j in 0..d {
                        a.swap(idx(t, j), idx(i, j));
                    }
                    for j in 0..d {
                        a.swap(idx(j, t), idx(j, i));
                    }
                } else {
                    // All remaining diagonal entries vanish; fold in a row
                    // with a nonzero off-diagonal pairing (hyperbolic pair).
                    let mut partner = None;
                    for j in t + 1..d {
                        if !a[idx(t, j)].is_zero() {
                            partner = Some(j);
                            break;
                        }
                    }
                    match partner {
                        Some(j) => {
                            // row_t += row_j, col_t += col_j: the new diagonal
                            // entry is 2 a_tj != 0.
                            for c in 0..d {
                                let add = a[idx(j, c)].clone();
                                a[idx(t, c)] = &a[idx(t, c)] + add;
                            }
                            for r in 0..d {
                                let add = a[idx(r, j)].clone();
                                a[idx(r, t)] = &a[idx(r, t)] + add;
                            }
                        }
                        None => continue, // null vector
                    }
                }
            }
            let pivot = a[idx(t, t)].clone();
            if pivot.is_zero() {
                continue;
            }
            if pivot.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            for i in t + 1..d {
                if a[idx(i, t)].is_zero() {
                    continue;
                }
                let f = &a[idx(i, t)] / &pivot;
                for j in t..d {
                    let sub = &f * &a[idx(t, j)];
                    a[idx(i, j)] = &a[idx(i, j)] - sub;
                }
                for j in t..d {
                    let sub = &f * &a[idx(j, t)];
                    a[idx(j, i)] = &a[idx(j, i)] - sub;
                }
            }
        }
        (plus, minus)
    }

    /// Serialize in the stable Gram text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("dim={}\n", self.dim);
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self.gram.at(i, j).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<SymIntForm> {
        let mut lines = text.lines().enumerate();
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, msg: "empty input".into() })?;
        let dim: usize = header
            .trim()
            .strip_prefix("dim=")
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse {
                line: hline + 1,
                msg: format!("expected `dim=<d>`, got `{header}`"),
            })?;
        let mut g = IntMat::zero(dim, dim);
        let mut filled = 0usize;
        for (lno, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if filled >= dim {
                return Err(Error::Parse { line: lno + 1, msg: "too many rows".into() });
            }
            let vals: Vec<BigInt> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<BigInt>().map_err(|_| Error::Parse {
                        line: lno + 1,
                        msg: format!("bad entry `{t}`"),
                    })
                })
                .collect::<Result<_>>()?;
            if vals.len() != dim {
                return Err(Error::Parse {
                    line: lno + 1,
                    msg: format!("expected {dim} entries, got {}", vals.len()),
                });
            }
            for (j, v) in vals.into_iter().enumerate() {
                g.set(filled, j, v);
            }
            filled += 1;
        }
        if filled != dim {
            return Err(Error::Parse {
                line: 0,
                msg: format!("expected {dim} rows, got {filled}"),
            });
        }
        SymIntForm::new(g)
    }
}

impl FormInvariants {
    /// TSV header matching `to_tsv_row`.
    pub fn tsv_header() -> &'static str {
        "rank\tb+\tb-\tsigma\tdet\tparity\tunimodular\ttorsion"
    }

    pub fn to_tsv_row(&self) -> String {
        let torsion = if self.torsion.is_empty() {
            "-".to_string()
        } else {
            self.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.rank,
            self.b_plus,
            self.b_minus,
            self.signature,
            self.determinant,
            self.parity,
            self.unimodular,
            torsion
        )
    }

    pub fn from_tsv_row(row: &str) -> Result<FormInvariants> {
        let f: Vec<&str> = row.trim().split('\t').collect();
        if f.len() != 8 {
            return Err(Error::Parse { line: 0, msg: "invariants row needs 8 fields".into() });
        }
        let parse_usize = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse { line: 0, msg: format!("bad `{s}`") })
        };
        let torsion = if f[7] == "-" {
            vec![]
        } else {
            f[7].split(',')
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| Error::Parse { line: 0, msg: format!("bad torsion `{t}`") })
                })
                .collect::<Result<_>>()?
        };
        Ok(FormInvariants {
            rank: parse_usize(f[0])?,
            b_plus: parse_usize(f[1])?,
            b_minus: parse_usize(f[2])?,
            signature: f[3]
                .parse()
                .map_err(|_| Error::Parse { line: 0, msg: format!("bad sigma `{}`", f[3]) })?,
            determinant: f[4]
                .parse()
                .map_err(|_| Error::Parse { line: 0, msg: format!("bad det `{}`", f[4]) })?,
            parity: match f[5] {
                "even" => Parity::Even,
                "odd" => Parity::Odd,
                other => {
                    return Err(Error::Parse { line: 0, msg: format!("bad parity `{other}`") })
                }
            },
            unimodular: f[6] == "true",
            torsion,
        })
    }
}

/// Classify an indefinite unimodular form by rank, signature and parity.
/// Definite forms are rejected: their classification is incomplete and out of
/// scope. With `smooth_spin`, an even form with an odd number of E8 summands
/// is flagged as violating Rohlin's theorem.
pub fn classify_indefinite_unimodular(
    inv: &FormInvariants,
    smooth_spin: bool,
) -> Result<UnimodularClass> {
    if !inv.unimodular {
        return Err(Error::Domain("form is not unimodular".into()));
    }
    if inv.rank == 0 || inv.b_plus == 0 || inv.b_minus == 0 {
        return Err(Error::Domain(
            "definite (or zero) form: classification unsupported".into(),
        ));
    }
    match inv.parity {
        Parity::Odd => Ok(UnimodularClass::Diagonal { plus: inv.b_plus, minus: inv.b_minus }),
        Parity::Even => {
            if inv.signature.rem_euclid(8) != 0 {
                return Err(Error::Internal(format!(
                    "even unimodular form with signature {} not divisible by 8",
                    inv.signature
                )));
            }
            let e8 = inv.signature / 8;
            let rest = inv.rank as i64 - 8 * e8.abs();
            if rest < 0 || rest % 2 != 0 {
                return Err(Error::Internal(
                    "even unimodular form with inconsistent rank/signature".into(),
                ));
            }
            let h = rest / 2;
            Ok(UnimodularClass::Even { e8, h, rohlin_violation: smooth_spin && e8 % 2 != 0 })
        }
    }
}

/// The maximal totally isotropic dimension of the form over the rationals:
/// nullity + min(b+, b-).
pub fn rational_isotropic_dim(inv: &FormInvariants, dim: usize) -> usize {
    (dim - inv.rank) + inv.b_plus.min(inv.b_minus)
}

/// Trial-division primality test for the small moduli used here.
pub fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The maximal dimension of a totally isotropic subspace of the mod-p
/// reduction of F: the mod-p nullity plus the Witt index of the nondegenerate
/// part, computed by constructive Witt decomposition (find an isotropic
/// vector, split off a hyperbolic plane, recurse).
pub fn witt_isotropic_dim_mod_p(f: &SymIntForm, p: u64) -> Result<usize> {
    if !is_prime_u64(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let d = f.dim;
    let pm = BigInt::from(p);
    let mut g = vec![0u64; d * d];
    for i in 0..d {
        for j in 0..d {
            g[i * d + j] = u64::try_from(&f.gram.at(i, j).mod_floor(&pm)).expect("residue");
        }
    }
    let (nullity, nondeg) = split_radical(&g, d, p);
    Ok(nullity + witt_index(nondeg, p))
}

/// Split off the radical of a symmetric matrix over Z/p; returns the radical
/// dimension and the Gram matrix of a nondegenerate complement.
fn split_radical(g: &[u64], d: usize, p: u64) -> (usize, Vec<Vec<u64>>) {
    // Kernel of the Gram matrix.
    let mut a = g.to_vec();
    let mut basis: Vec<Vec<u64>> = (0..d)
        .map(|i| (0..d).map(|j| u64::from(i == j)).collect())
        .collect();
    // Row-reduce [G | I] to find the kernel and a complement.
    let idx = |i: usize, j: usize| i * d + j;
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..d {
        let mut piv = None;
        for i in row..d {
            if a[idx(i, col)] % p != 0 {
                piv = Some(i);
                break;
            }
        }
        let piv = match piv {
            Some(i) => i,
            None => continue,
        };
        if piv != row {
            for j in 0..d {
                a.swap(idx(row, j), idx(piv, j));
            }
        }
        let inv = modinv_u(a[idx(row, col)] % p, p);
        for i in 0..d {
            if i == row {
                continue;
            }
            let f = a[idx(i, col)] % p * inv % p;
            if f == 0 {
                continue;
            }
            for j in 0..d {
                let sub = f * (a[idx(row, j)] % p) % p;
                a[idx(i, j)] = (a[idx(i, j)] + p * p - sub) % p;
            }
        }
        pivots.push(col);
        row += 1;
    }
    // The kernel vectors come from the free columns of the reduced system
    // G x = 0; the complement is spanned by the pivot-column unit vectors.
    let rank = pivots.len();
    let nullity = d - rank;
    // Complement basis: unit vectors on pivot columns.
    basis.retain(|_| true);
    let comp: Vec<usize> = pivots;
    let mut gram = vec![vec![0u64; rank]; rank];
    for (i, &bi) in comp.iter().enumerate() {
        for (j, &bj) in comp.iter().enumerate() {
            gram[i][j] = g[bi * d + bj] % p;
        }
    }
    // The restriction of the form to the span of the pivot unit vectors is
    // nondegenerate: its Gram consists of pivot columns of full rank.
    (nullity, gram)
}

/// Witt index of a nondegenerate symmetric Gram matrix over Z/p, by finding
/// an isotropic vector and splitting off a hyperbolic plane.
fn witt_index(gram: Vec<Vec<u64>>, p: u64) -> usize {
    let d = gram.len();
    if d == 0 {
        return 0;
    }
    let v = match find_isotropic(&gram, p) {
        Some(v) => v,
        None => return 0,
    };
    // Find a partner w with B(v, w) != 0.
    let bvw = |w: &[u64], g: &[Vec<u64>], v: &[u64]| -> u64 {
        let mut s: u64 = 0;
        for i in 0..g.len() {
            for j in 0..g.len() {
                s = (s + v[i] % p * (g[i][j] % p) % p * (w[j] % p)) % p;
            }
        }
        s
    };
    let mut w = None;
    for i in 0..d {
        let mut e = vec![0u64; d];
        e[i] = 1;
        if bvw(&e, &gram, &v) != 0 {
            w = Some(e);
            break;
        }
    }
    let mut w = w.expect("nondegenerate form has a partner vector");
    // Normalize B(v, w) = 1.
    let s = bvw(&w, &gram, &v);
    let sinv = modinv_u(s, p);
    for x in w.iter_mut() {
        *x = *x * sinv % p;
    }
    // Make w isotropic when possible (always for odd p).
    let qw = bvw(&w, &gram, &w);
    if qw != 0 && p != 2 {
        // w' = w - (Q(w)/2) v keeps B(v,w') = 1 and has Q(w') = 0.
        let half = modinv_u(2 % p, p);
        let lam = qw * half % p;
        for i in 0..d {
            w[i] = (w[i] + p - lam * v[i] % p) % p;
        }
    }
    let delta = bvw(&w, &gram, &w); // 0, or possibly 1 when p = 2
    // Project the other vectors into the orthogonal complement of <v, w>.
    let mut comp_basis: Vec<Vec<u64>> = Vec::new();
    for i in 0..d {
        let mut u = vec![0u64; d];
        u[i] = 1;
        let a = bvw(&u, &gram, &v); // B(u, v)
        let b = bvw(&u, &gram, &w); // B(u, w)
        // u' = u - b v - a w + a delta v  satisfies B(u',v) = B(u',w) = 0.
        for j in 0..d {
            let corr = (b * v[j] + a * w[j]) % p;
            let back = a * delta % p * v[j] % p;
            u[j] = (u[j] + 2 * p * p - corr + back) % p;
        }
        comp_basis.push(u);
    }
    // Gram of the complement in the projected coordinates; drop dependencies.
    let indep = independent_subset(&comp_basis, p, d.saturating_sub(2));
    let m = indep.len();
    let mut sub = vec![vec![0u64; m]; m];
    for i in 0..m {
        for j in 0..m {
            sub[i][j] = bvw(&indep[j], &gram, &indep[i]);
        }
    }
    1 + witt_index(sub, p)
}

/// Greedy selection of `want` linearly independent vectors mod p.
fn independent_subset(vecs: &[Vec<u64>], p: u64, want: usize) -> Vec<Vec<u64>> {
    let d = vecs.first().map_or(0, |v| v.len());
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    for v in vecs {
        if chosen.len() == want {
            break;
        }
        let mut cand = rows.clone();
        cand.push(v.clone());
        let mut flat: Vec<u64> = cand.iter().flatten().copied().collect();
        let r = gauss_rank_u(&mut flat, cand.len(), d, p);
        if r == cand.len() {
            rows = cand;
            chosen.push(v.clone());
        }
    }
    chosen
}

fn gauss_rank_u(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
    let idx = |i: usize, j: usize| i * cols + j;
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..cols {
        let mut piv = None;
        for i in row..rows {
            if a[idx(i, col)] % p != 0 {
                piv = Some(i);
                break;
            }
        }
        let piv = match piv {
            Some(i) => i,
            None => continue,
        };
        for j in 0..cols {
            a.swap(idx(row, j), idx(piv, j));
        }
        let inv = modinv_u(a[idx(row, col)] % p, p);
        for i in row + 1..rows {
            let f = a[idx(i, col)] % p * inv % p;
            if f == 0 {
                continue;
            }
            for j in col..cols {
                let sub = f * (a[idx(row, j)] % p) % p;
                a[idx(i, j)] = (a[idx(i, j)] + p * p - sub) % p;
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Find a nonzero isotropic vector for a nondegenerate Gram matrix mod p, or
/// None when the form is anisotropic.
fn find_isotropic(gram: &[Vec<u64>], p: u64) -> Option<Vec<u64>> {
    let d = gram.len();
    let q = |v: &[u64]| -> u64 {
        let mut s = 0u64;
        for i in 0..d {
            for j in 0..d {
                s = (s + v[i] * gram[i][j] % p * v[j]) % p;
            }
        }
        s
    };
    // Any basis vector with zero self-pairing works.
    for i in 0..d {
        let mut e = vec![0u64; d];
        e[i] = 1;
        if q(&e) == 0 {
            return Some(e);
        }
    }
    if p == 2 {
        // All diagonal entries are 1; e_i + e_j is isotropic mod 2.
        if d >= 2 {
            let mut e = vec![0u64; d];
            e[0] = 1;
            e[1] = 1;
            return Some(e);
        }
        return None;
    }
    // Odd p: diagonalize by congruence, then solve in at most 3 variables.
    let (basis, diag) = diagonalize_mod_p(gram, p);
    let r = diag.len();
    // Two-variable solution: d1 x^2 + d2 y^2 = 0 iff -d2/d1 is a square.
    for i in 0..r {
        for j in i + 1..r {
            let target = p - diag[j] % p;
            let ratio = target % p * modinv_u(diag[i], p) % p;
            if let Some(x) = sqrt_mod_p(ratio, p) {
                let mut v = vec![0u64; d];
                for t in 0..d {
                    v[t] = (x * basis[i][t] + basis[j][t]) % p;
                }
                if v.iter().any(|&c| c != 0) && q(&v) == 0 {
                    return Some(v);
                }
            }
        }
    }
    if r >= 3 {
        // d1 x^2 + d2 y^2 = -d3 is always solvable over F_p.
        let (d1, d2, d3) = (diag[0], diag[1], diag[2]);
        for x in 0..p {
            let lhs = (p - d3 % p) % p;
            let rem = (lhs + p - d1 * x % p * x % p) % p;
            let yy = rem * modinv_u(d2, p) % p;
            if let Some(y) = sqrt_mod_p(yy, p) {
                let mut v = vec![0u64; d];
                for t in 0..d {
                    v[t] = (x * basis[0][t] + y * basis[1][t] + basis[2][t]) % p;
                }
                debug_assert_eq!(q(&v), 0);
                return Some(v);
            }
        }
    }
    None
}

/// Congruence diagonalization over Z/p (p odd); returns the new basis rows
/// and the nonzero diagonal values.
fn diagonalize_mod_p(gram: &[Vec<u64>], p: u64) -> (Vec<Vec<u64>>, Vec<u64>) {
    let d = gram.len();
    let mut basis: Vec<Vec<u64>> = (0..d)
        .map(|i| (0..d).map(|j| u64::from(i == j)).collect())
        .collect();
    let b = |u: &[u64], v: &[u64]| -> u64 {
        let mut s = 0u64;
        for i in 0..d {
            for j in 0..d {
                s = (s + u[i] * gram[i][j] % p * v[j]) % p;
            }
        }
        s
    };
    let mut diag = Vec::new();
    let mut done = 0usize;
    while done < basis.len() {
        // Ensure a nonzero self-pairing at position `done`.
        if b(&basis[done], &basis[done]) == 0 {
            let mut fixed = false;
            for i in done + 1..basis.len() {
                if b(&basis[i], &basis[i]) != 0 {
                    basis.swap(done, i);
                    fixed = true;
                    break;
                }
            }
            if !fixed {
                for i in done + 1..basis.len() {
                    if b(&basis[done], &basis[i]) != 0 {
                        let merged: Vec<u64> = (0..d)
                            .map(|t| (basis[done][t] + basis[i][t]) % p)
                            .collect();
                        basis[done] = merged;
                        fixed = true;
                        break;
                    }
                }
            }
            if !fixed {
                // Null vector within the (possibly degenerate) span; drop it.
                basis.remove(done);
                continue;
            }
        }
        let pv = b(&basis[done], &basis[done]);
        let inv = modinv_u(pv, p);
        let head = basis[done].clone();
        for i in done + 1..basis.len() {
            let f = b(&basis[i], &head) * inv % p;
            if f == 0 {
                continue;
            }
            for t in 0..d {
                basis[i][t] = (basis[i][t] + p - f * head[t] % p) % p;
            }
        }
        diag.push(pv);
        done += 1;
    }
    (basis, diag)
}

fn modinv_u(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    // p is small here; scan.
    for x in 1..p {
        if x * x % p == a {
            return Some(x);
        }
    }
    None
}
