//! Dense integer matrices with the exact algorithms the rest of the crate
//! needs: fraction-free (Bareiss) determinants, Smith normal form, unimodular
//! inverses, and modular elimination over Z/p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A dense matrix of arbitrary-precision integers in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(*v);
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    /// Render as rows of space-separated integers, one row per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.at(k, j);
                    *out.at_mut(i, j) += add;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det_bareiss(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                // Pivot search within the column.
                let mut found = None;
                for i in k + 1..n {
                    if !a[idx(i, k)].is_zero() {
                        found = Some(i);
                        break;
                    }
                }
                match found {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(i, j));
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[idx(k, k)] * &a[idx(i, j)] - &a[idx(i, k)] * &a[idx(k, j)];
                    // Bareiss guarantees exact divisibility by the previous pivot.
                    a[idx(i, j)] = num / &prev;
                }
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        let d = a[idx(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Determinant modulo a prime, by Gaussian elimination over Z/p.
    /// Used as an independent cross-check of `det_bareiss`.
    pub fn det_mod_p(&self, p: u64) -> u64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let pm = BigInt::from(p);
        let mut a: Vec<u64> = self
            .data
            .iter()
            .map(|v| {
                let r = v.mod_floor(&pm);
                u64::try_from(&r).expect("residue fits in u64")
            })
            .collect();
        let idx = |i: usize, j: usize| i * n + j;
        let mut det: u64 = 1;
        for k in 0..n {
            let mut piv = None;
            for i in k..n {
                if a[idx(i, k)] % p != 0 {
                    piv = Some(i);
                    break;
                }
            }
            let piv = match piv {
                Some(i) => i,
                None => return 0,
            };
            if piv != k {
                for j in 0..n {
                    a.swap(idx(k, j), idx(piv, j));
                }
                det = (p - det % p) % p;
            }
            let pv = a[idx(k, k)] % p;
            det = mulmod(det, pv, p);
            let inv = modinv(pv, p);
            for i in k + 1..n {
                let f = mulmod(a[idx(i, k)] % p, inv, p);
                if f == 0 {
                    continue;
                }
                for j in k..n {
                    let sub = mulmod(f, a[idx(k, j)] % p, p);
                    a[idx(i, j)] = (a[idx(i, j)] % p + p - sub) % p;
                }
            }
        }
        det % p
    }

    /// Rank over Z/p.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        let pm = BigInt::from(p);
        let mut a: Vec<u64> = self
            .data
            .iter()
            .map(|v| u64::try_from(&v.mod_floor(&pm)).expect("residue fits"))
            .collect();
        gauss_rank(&mut a, self.rows, self.cols, p)
    }

    /// The elementary divisors d_1 | d_2 | ... of the matrix (nonnegative,
    /// zeros trailing), by Smith normal form with naive minimal pivoting.
    /// Elementary divisors d_1 | d_2 | ... (Smith normal form diagonal),
    /// padded with zeros to min(rows, cols) when the matrix is singular.
    pub fn smith_divisors(&self) -> Vec<BigInt> {
        // For square nonsingular matrices, work prime-by-prime modulo
        // p^(e+1): entries stay bounded by the determinant, avoiding the
        // coefficient explosion of the naive elimination.
        if self.rows == self.cols {
            let det = self.det_bareiss().abs();
            if !det.is_zero() {
                if let Some(divisors) = self.smith_nonsingular(&det) {
                    return divisors;
                }
            }
        }
        self.smith_naive()
    }

    fn smith_nonsingular(&self, det: &BigInt) -> Option<Vec<BigInt>> {
        let n = self.rows;
        let mut divisors = vec![BigInt::one(); n];
        for (p, e) in factorize(det) {
            let vals = self.local_valuations(&p, e)?;
            for (i, v) in vals.into_iter().enumerate() {
                divisors[i] *= p.pow(v);
            }
        }
        Some(divisors)
    }

    /// p-adic valuations of the elementary divisors, ascending. Runs the
    /// Smith elimination over Z/p^(e+1) with minimal-valuation pivoting,
    /// where e is the valuation of the determinant; all divisor valuations
    /// are <= e, so the quotient ring is faithful.
    fn local_valuations(&self, p: &BigInt, e: u32) -> Option<Vec<u32>> {
        let n = self.rows;
        let modulus = p.pow(e + 1);
        let mut a: Vec<BigInt> =
            self.data.iter().map(|x| x.mod_floor(&modulus)).collect();
        let idx = |i: usize, j: usize| i * n + j;
        let val = |x: &BigInt| -> u32 {
            // Valuation of a nonzero residue; caller filters zeros.
            let mut v = 0u32;
            let mut y = x.clone();
            while (&y % p).is_zero() {
                y /= p;
                v += 1;
            }
            v
        };
        let mut vals = Vec::with_capacity(n);
        for t in 0..n {
            // Global minimal-valuation pivot in the remaining block.
            let mut best: Option<(usize, usize, u32)> = None;
            for i in t..n {
                for j in t..n {
                    if a[idx(i, j)].is_zero() {
                        continue;
                    }
                    let v = val(&a[idx(i, j)]);
                    if best.map_or(true, |(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
            let (bi, bj, v) = best?;
            if v > e {
                return None;
            }
            for c in 0..n {
                a.swap(idx(t, c), idx(bi, c));
            }
            for r in 0..n {
                a.swap(idx(r, t), idx(r, bj));
            }
            // pivot = u * p^v with u a unit; clear row and column t.
            let unit = &a[idx(t, t)] / p.pow(v);
            let inv = modinv_big(&unit, &modulus)?;
            for i in t + 1..n {
                if a[idx(i, t)].is_zero() {
                    continue;
                }
                let q = (&a[idx(i, t)] / p.pow(v) * &inv).mod_floor(&modulus);
                for c in t..n {
                    let sub = (&q * &a[idx(t, c)]).mod_floor(&modulus);
                    a[idx(i, c)] = (&a[idx(i, c)] - sub).mod_floor(&modulus);
                }
            }
            for j in t + 1..n {
                if a[idx(t, j)].is_zero() {
                    continue;
                }
                let q = (&a[idx(t, j)] / p.pow(v) * &inv).mod_floor(&modulus);
                for r in t..n {
                    let sub = (&q * &a[idx(r, t)]).mod_floor(&modulus);
                    a[idx(r, j)] = (&a[idx(r, j)] - sub).mod_floor(&modulus);
                }
            }
            vals.push(v);
        }
        if vals.iter().sum::<u32>() != e {
            return None;
        }
        Some(vals)
    }

    fn smith_naive(&self) -> Vec<BigInt> {
        let mut a = self.clone();
        let n = self.rows.min(self.cols);
        let mut divisors = Vec::with_capacity(n);
        let mut t = 0usize;
        while t < n {
            // Find a nonzero entry of minimal absolute value in the
            // remaining block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    if !a.at(i, j).is_zero() {
                        match best {
                            None => best = Some((i, j)),
                            Some((bi, bj)) => {
                                if a.at(i, j).abs() < a.at(bi, bj).abs() {
                                    best = Some((i, j));
                                }
                            }
                        }
                    }
                }
            }
            let (bi, bj) = match best {
                Some(x) => x,
                None => break,
            };
            a.swap_rows(t, bi);
            a.swap_cols(t, bj);
            // Reduce row and column t modulo the pivot until clean.
            loop {
                let mut dirty = false;
                for i in t + 1..a.rows {
                    if !a.at(i, t).is_zero() {
                        let q = div_nearest(a.at(i, t), a.at(t, t));
                        a.row_sub(i, t, &q);
                        if !a.at(i, t).is_zero() {
                            a.swap_rows(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..a.cols {
                    if !a.at(t, j).is_zero() {
                        let q = div_nearest(a.at(t, j), a.at(t, t));
                        a.col_sub(j, t, &q);
                        if !a.at(t, j).is_zero() {
                            a.swap_cols(t, j);
                            dirty = true;
                        }
                    }
                }
                if !dirty {
                    break;
                }
            }
            // Ensure the pivot divides the rest of the block; otherwise fold
            // the offending row in and repeat.
            let mut offender = None;
            'scan: for i in t + 1..a.rows {
                for j in t + 1..a.cols {
                    if !(a.at(i, j) % a.at(t, t)).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = offender {
                a.row_add(t, i);
                continue;
            }
            let d = a.at(t, t).abs();
            divisors.push(d);
            t += 1;
        }
        while divisors.len() < n {
            divisors.push(BigInt::zero());
        }
        divisors
    }

    /// Inverse of a matrix with determinant +-1; entries are exact integers.
    pub fn inverse_unimodular(&self) -> Result<IntMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let det = self.det_bareiss();
        if !det.abs().is_one() {
            return Err(Error::Domain(format!(
                "matrix is not unimodular (det = {det})"
            )));
        }
        // Gauss-Jordan over the rationals on [A | I]; the result is integral
        // because det = +-1.
        let mut a: Vec<BigRational> = Vec::with_capacity(n * 2 * n);
        for i in 0..n {
            for j in 0..n {
                a.push(BigRational::from(self.at(i, j).clone()));
            }
            for j in 0..n {
                let v = if i == j { BigInt::one() } else { BigInt::zero() };
                a.push(BigRational::from(v));
            }
        }
        let w = 2 * n;
        let idx = |i: usize, j: usize| i * w + j;
        for k in 0..n {
            let mut piv = None;
            for i in k..n {
                if !a[idx(i, k)].is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let piv = piv.ok_or_else(|| Error::Internal("singular unimodular matrix".into()))?;
            if piv != k {
                for j in 0..w {
                    a.swap(idx(k, j), idx(piv, j));
                }
            }
            let pv = a[idx(k, k)].clone();
            for j in k..w {
                a[idx(k, j)] = &a[idx(k, j)] / &pv;
            }
            for i in 0..n {
                if i == k || a[idx(i, k)].is_zero() {
                    continue;
                }
                let f = a[idx(i, k)].clone();
                for j in k..w {
                    let sub = &f * &a[idx(k, j)];
                    a[idx(i, j)] = &a[idx(i, j)] - sub;
                }
            }
        }
        let mut inv = IntMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[idx(i, n + j)];
                if !v.is_integer() {
                    return Err(Error::Internal(
                        "non-integral inverse of unimodular matrix".into(),
                    ));
                }
                inv.set(i, j, v.to_integer());
            }
        }
        Ok(inv)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            let a = i * self.cols + c;
            let b = j * self.cols + c;
            self.data.swap(a, b);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            let a = r * self.cols + i;
            let b = r * self.cols + j;
            self.data.swap(a, b);
        }
    }

    /// row_i -= q * row_j
    pub fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let sub = q * self.at(j, c);
            *self.at_mut(i, c) -= sub;
        }
    }

    /// col_i -= q * col_j
    pub fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let sub = q * self.at(r, j);
            *self.at_mut(r, i) -= sub;
        }
    }

    /// row_i += row_j
    pub fn row_add(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            let add = self.at(j, c).clone();
            *self.at_mut(i, c) += add;
        }
    }
}

fn modinv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// Prime factorization (p, multiplicity): trial division for small factors,
/// Miller-Rabin plus Pollard's rho for the cofactor.
fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |out: &mut Vec<(BigInt, u32)>, p: BigInt, e: u32| {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, m)) => *m += e,
            None => out.push((p, e)),
        }
    };
    for small in std::iter::once(2u64).chain((3u64..1_000_000).step_by(2)) {
        let p = BigInt::from(small);
        if &p * &p > n {
            break;
        }
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            push(&mut out, p, e);
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(&mut out, m, 1);
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    out
}

/// Miller-Rabin with the deterministic base set for inputs below 3.3e24;
/// probabilistic (overwhelmingly reliable) beyond.
fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - BigInt::one();
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> (s as usize);
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

/// Pollard's rho (Floyd cycle) on an odd composite with no small factors.
fn pollard_rho(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::from(1);
    loop {
        let f = |x: &BigInt| (x * x + &c).mod_floor(n);
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = one.clone();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Quotient rounding to the nearest integer; keeps Smith pivots small.
pub fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let r2: BigInt = &r * 2;
    if r2.abs() > b.abs() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse by Fermat for prime p.
fn modinv(a: u64, p: u64) -> u64 {
    powmod(a % p, p - 2, p)
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn gauss_rank(a: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
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
        let inv = modinv(a[idx(row, col)] % p, p);
        for i in row + 1..rows {
            let f = mulmod(a[idx(i, col)] % p, inv, p);
            if f == 0 {
                continue;
            }
            for j in col..cols {
                let sub = mulmod(f, a[idx(row, j)] % p, p);
                a[idx(i, j)] = (a[idx(i, j)] % p + p - sub) % p;
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
