//! Bridge from cohomology classes to bilinear forms: the Gram matrix of the
//! pairing (x, y) -> x ^ y ^ omega on degree-2 classes, the GL_6(Z) normal
//! form of a degree-2 class on Z^6 (with a determinant-1 witness), the GL_5(Z)
//! normal form of a degree-1 class on Z^5, and the orbit invariants read off
//! from omega, omega^2, omega^3.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exterior::{binomial, BasisChange, KVector, MultiIndex};
use crate::forms::SymIntForm;
use crate::matrix::IntMat;
use crate::{Error, Result};

/// The symmetric pairing on degree-2 classes induced by a class omega of
/// complementary degree: entry (r, s) is the top coefficient of
/// m_r ^ m_s ^ omega over the degree-2 monomial basis.
#[derive(Debug, Clone)]
pub struct PairingForm {
    pub n: u8,
    pub omega: KVector,
    pub form: SymIntForm,
}

/// Build the pairing Gram matrix for `omega` of degree n-4 on Z^n.
pub fn pairing_gram(omega: &KVector) -> Result<PairingForm> {
    let n = omega.n;
    if n < 4 {
        return Err(Error::Domain(format!("pairing needs rank >= 4, got {n}")));
    }
    if omega.k != n - 4 {
        return Err(Error::Domain(format!(
            "pairing on rank {n} needs a degree-{} class, got degree {}",
            n - 4,
            omega.k
        )));
    }
    let dim = binomial(usize::from(n), 2);
    let mut gram = IntMat::zero(dim, dim);
    let monomials: Vec<KVector> = (0..dim)
        .map(|r| {
            let mi = MultiIndex::from_position(n, 2, r).expect("valid position");
            KVector::monomial(n, &mi.indices, BigInt::one()).expect("valid monomial")
        })
        .collect();
    for r in 0..dim {
        for s in r..dim {
            let prod = monomials[r].wedge(&monomials[s])?.wedge(omega)?;
            let v = prod.top_coefficient()?;
            gram.set(r, s, v.clone());
            gram.set(s, r, v);
        }
    }
    let form = SymIntForm::new(gram)?;
    Ok(PairingForm { n, omega: omega.clone(), form })
}

/// Canonical GL_6(Z) representative data: omega ~ a x1x2 + b x3x4 + c x5x6
/// with a, b >= 0 and a | b | c, together with a determinant-1 witness basis
/// change carrying the input to the canonical representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalTriple {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub witness: BasisChange,
}

impl NormalTriple {
    /// The canonical class a x1x2 + b x3x4 + c x5x6.
    pub fn canonical_class(&self) -> KVector {
        canonical_omega_6(&self.a, &self.b, &self.c)
    }
}

/// The class a x1x2 + b x3x4 + c x5x6 on Z^6.
pub fn canonical_omega_6(a: &BigInt, b: &BigInt, c: &BigInt) -> KVector {
    let mut w = KVector::zero(6, 2).expect("valid shape");
    for (coeff, pair) in [(a, [1u8, 2]), (b, [3, 4]), (c, [5, 6])] {
        if !coeff.is_zero() {
            let m = KVector::monomial(6, &pair, coeff.clone()).expect("monomial");
            w = w.add(&m).expect("same shape");
        }
    }
    w
}

/// Read a degree-2 class on Z^6 as an antisymmetric 6x6 matrix S with
/// omega = sum_{i<j} S[i][j] x_{i+1} x_{j+1}.
fn to_antisymmetric(omega: &KVector) -> IntMat {
    let mut s = IntMat::zero(6, 6);
    for (pos, coeff) in omega.coeffs.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let mi = MultiIndex::from_position(6, 2, pos).expect("position");
        let (i, j) = (usize::from(mi.indices[0]) - 1, usize::from(mi.indices[1]) - 1);
        s.set(i, j, coeff.clone());
        s.set(j, i, -coeff.clone());
    }
    s
}

/// Congruence state: S is transformed by simultaneous row/column operations,
/// and the basis-change matrix B accumulates the column operations so that
/// B^T S_in B = S_current at every step.
struct Congruence {
    s: IntMat,
    b: IntMat,
}

impl Congruence {
    fn swap(&mut self, i: usize, j: usize) {
        self.s.swap_rows(i, j);
        self.s.swap_cols(i, j);
        self.b.swap_cols(i, j);
    }

    /// column j += q * column k (and the matching row operation on S).
    fn add(&mut self, j: usize, k: usize, q: &BigInt) {
        for r in 0..6 {
            let add = q * self.s.at(r, k);
            let v = self.s.at(r, j) + add;
            self.s.set(r, j, v);
        }
        for c in 0..6 {
            let add = q * self.s.at(k, c);
            let v = self.s.at(j, c) + add;
            self.s.set(j, c, v);
        }
        for r in 0..6 {
            let add = q * self.b.at(r, k);
            let v = self.b.at(r, j) + add;
            self.b.set(r, j, v);
        }
    }

    fn negate(&mut self, j: usize) {
        for r in 0..6 {
            let v = -self.s.at(r, j);
            self.s.set(r, j, v);
        }
        for c in 0..6 {
            let v = -self.s.at(j, c);
            self.s.set(j, c, v);
        }
        for r in 0..6 {
            let v = -self.b.at(r, j);
            self.b.set(r, j, v);
        }
    }
}

/// Normal form of a degree-2 class on Z^6: the unique triple (a, b, c) with
/// a, b >= 0 and a | b | c such that some determinant-1 basis change carries
/// omega to a x1x2 + b x3x4 + c x5x6. The witness is verified against the
/// canonical class before returning, and the triple is cross-checked against
/// the invariants read from omega, omega^2, omega^3.
pub fn normal_form_6(omega: &KVector) -> Result<NormalTriple> {
    if omega.n != 6 || omega.k != 2 {
        return Err(Error::Domain(format!(
            "normal form needs a degree-2 class on Z^6, got degree {} on Z^{}",
            omega.k, omega.n
        )));
    }
    let mut st = Congruence { s: to_antisymmetric(omega), b: IntMat::identity(6) };
    let mut divisors: Vec<BigInt> = Vec::new();
    for block in 0..3 {
        let t = 2 * block;
        match reduce_block(&mut st, t) {
            Some(d) => divisors.push(d),
            None => break,
        }
    }
    while divisors.len() < 3 {
        divisors.push(BigInt::zero());
    }
    // Divisor chain from the alternating reduction.
    for w in divisors.windows(2) {
        if !w[0].is_zero() && !(&w[1] % &w[0]).is_zero() {
            return Err(Error::Internal(format!(
                "divisor chain broken: {} does not divide {}",
                w[0], w[1]
            )));
        }
        if w[0].is_zero() && !w[1].is_zero() {
            return Err(Error::Internal("zero divisor followed by nonzero".into()));
        }
    }
    let (a, b, mut c) = (divisors[0].clone(), divisors[1].clone(), divisors[2].clone());
    // Fix the witness determinant to +1; a reflection in x6 flips the sign
    // of the x5x6 coefficient.
    let det = st.b.det_bareiss();
    if det == BigInt::from(-1) {
        st.negate(5);
        c = -c;
    } else if !det.is_one() {
        return Err(Error::Internal(format!("witness determinant {det}, expected +-1")));
    }
    let witness = BasisChange::new(st.b.clone())?;
    let canonical = canonical_omega_6(&a, &b, &c);
    let image = crate::exterior::gl_action(&witness, omega)?;
    if image != canonical {
        return Err(Error::Internal(
            "normal-form witness does not carry the input to its canonical class".into(),
        ));
    }
    // Cross-check against the directly computed orbit invariants.
    let ti = triple_invariants(omega)?;
    let ab = (&a * &b).abs();
    let abc = &ab * c.abs();
    let sign_c: i8 = if c.is_negative() { -1 } else { 1 };
    if ti.content != a
        || ti.halfsquare != ab
        || ti.sixth != abc
        || (!c.is_zero() && ti.sign != sign_c)
    {
        return Err(Error::Internal(format!(
            "normal form ({a},{b},{c}) disagrees with invariants ({}, {}, {}, {:+})",
            ti.content, ti.halfsquare, ti.sixth, ti.sign
        )));
    }
    Ok(NormalTriple { a, b, c, witness })
}

/// Bring the trailing block (rows/cols >= t) to the form d (x_{t+1}x_{t+2})
/// with d > 0 dividing every remaining entry; returns None when the block is
/// zero.
fn reduce_block(st: &mut Congruence, t: usize) -> Option<BigInt> {
    loop {
        // Minimal |entry| in the trailing block becomes the pivot at (t,t+1).
        let mut best: Option<(usize, usize)> = None;
        for i in t..6 {
            for j in i + 1..6 {
                let v = st.s.at(i, j);
                if v.is_zero() {
                    continue;
                }
                match &best {
                    Some((bi, bj)) if st.s.at(*bi, *bj).abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let (pi, pj) = best?;
        // Move the pivot to (t, t+1), tracking the index shuffle.
        let pj = if pi != t {
            st.swap(pi, t);
            if pj == t {
                pi
            } else {
                pj
            }
        } else {
            pj
        };
        if pj != t + 1 {
            st.swap(pj, t + 1);
        }
        if st.s.at(t, t + 1).is_negative() {
            st.negate(t + 1);
        }
        // Clear rows t and t+1 beyond the pivot pair. A nonzero remainder
        // strictly shrinks the pivot, so restart from pivot selection.
        let mut restart = false;
        for j in t + 2..6 {
            let p = st.s.at(t, t + 1).clone();
            let v = st.s.at(t, j).clone();
            if !v.is_zero() {
                let q = crate::matrix::div_nearest(&v, &p);
                st.add(j, t + 1, &(-q));
                if !st.s.at(t, j).is_zero() {
                    restart = true;
                    break;
                }
            }
            let v = st.s.at(t + 1, j).clone();
            if !v.is_zero() {
                // S[t+1][t] = -p, so column j += q * column t changes
                // S[t+1][j] by -q p.
                let q = crate::matrix::div_nearest(&v, &p);
                st.add(j, t, &q);
                if !st.s.at(t + 1, j).is_zero() {
                    restart = true;
                    break;
                }
            }
        }
        if restart {
            continue;
        }
        // Divisibility: the pivot must divide every entry of the next block;
        // otherwise fold the offending row into row t and restart (this
        // strictly shrinks the eventual pivot).
        let p = st.s.at(t, t + 1).clone();
        let mut offender = None;
        'scan: for i in t + 2..6 {
            for j in i + 1..6 {
                if !(st.s.at(i, j) % &p).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            st.add(t, i, &BigInt::one());
            continue;
        }
        return Some(p);
    }
}

/// GL_5(Z) normal form of a degree-1 class on Z^5: the content k, with a
/// determinant-1 witness sending omega to k x1.
#[derive(Debug, Clone)]
pub struct LineNormalForm {
    pub k: BigInt,
    pub witness: BasisChange,
}

pub fn normal_form_5(omega: &KVector) -> Result<LineNormalForm> {
    if omega.n != 5 || omega.k != 1 {
        return Err(Error::Domain(format!(
            "normal form needs a degree-1 class on Z^5, got degree {} on Z^{}",
            omega.k, omega.n
        )));
    }
    // gl_action(B, omega) has coefficient vector c^T B; column-reduce c to
    // (k, 0, 0, 0, 0) with unimodular column operations mirrored on B.
    let mut c: Vec<BigInt> = omega.coeffs.clone();
    let mut b = IntMat::identity(5);
    let negate_col = |b: &mut IntMat, j: usize| {
        for r in 0..5 {
            let v = -b.at(r, j);
            b.set(r, j, v);
        }
    };
    for j in 1..5 {
        while !c[j].is_zero() {
            if c[0].is_zero() {
                // Swap slots 0 and j; negate the vacated column to keep
                // the determinant at +1.
                c.swap(0, j);
                b.swap_cols(0, j);
                negate_col(&mut b, j);
                c[j] = -c[j].clone();
                continue;
            }
            let q = crate::matrix::div_nearest(&c[j], &c[0]);
            for r in 0..5 {
                let sub = &q * b.at(r, 0);
                let v = b.at(r, j) - sub;
                b.set(r, j, v);
            }
            let sub = &q * &c[0];
            c[j] -= sub;
            if !c[j].is_zero() {
                c.swap(0, j);
                b.swap_cols(0, j);
                negate_col(&mut b, j);
                c[j] = -c[j].clone();
            }
        }
    }
    if c[0].is_negative() {
        negate_col(&mut b, 0);
        negate_col(&mut b, 1);
        c[0] = -c[0].clone();
    }
    if b.det_bareiss() == BigInt::from(-1) {
        // Column 4 feeds a zero output coordinate; negating it fixes the
        // determinant without changing c^T B.
        negate_col(&mut b, 4);
    }
    let witness = BasisChange::new(b)?;
    let k = c[0].clone();
    let image = crate::exterior::gl_action(&witness, omega)?;
    let expected = if k.is_zero() {
        KVector::zero(5, 1)?
    } else {
        KVector::monomial(5, &[1], k.clone())?
    };
    if image != expected {
        return Err(Error::Internal(
            "line normal-form witness does not send the class to k x1".into(),
        ));
    }
    Ok(LineNormalForm { k, witness })
}

/// Orbit invariants of a degree-2 class on Z^6, read directly from the class:
/// the content a, half the content of omega^2 (= ab), a sixth of the top
/// coefficient of omega^3 in absolute value (= |abc|), and the sign of that
/// top coefficient (+1 when it vanishes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleInvariants {
    pub content: BigInt,
    pub halfsquare: BigInt,
    pub sixth: BigInt,
    pub sign: i8,
}

pub fn triple_invariants(omega: &KVector) -> Result<TripleInvariants> {
    if omega.n != 6 || omega.k != 2 {
        return Err(Error::Domain(format!(
            "triple invariants need a degree-2 class on Z^6, got degree {} on Z^{}",
            omega.k, omega.n
        )));
    }
    let content = omega.content();
    // Authoritative alternate reading of the content: the first elementary
    // divisor of the antisymmetric coefficient matrix. The two must agree.
    let snf_first = to_antisymmetric(omega)
        .smith_divisors()
        .into_iter()
        .find(|d| !d.is_zero())
        .unwrap_or_else(BigInt::zero);
    if snf_first != content {
        return Err(Error::Internal(format!(
            "content {content} disagrees with first elementary divisor {snf_first}"
        )));
    }
    let sq = omega.wedge(omega)?;
    let sq_content = sq.content();
    if sq_content.is_odd() {
        return Err(Error::Internal("omega^2 has odd content".into()));
    }
    let halfsquare: BigInt = sq_content / 2;
    let cube = sq.wedge(omega)?;
    let top = cube.top_coefficient()?;
    let six = BigInt::from(6);
    if !(&top % &six).is_zero() {
        return Err(Error::Internal("omega^3 top coefficient not divisible by 6".into()));
    }
    let abc: BigInt = top / six;
    let sign: i8 = if abc.is_negative() { -1 } else { 1 };
    Ok(TripleInvariants { content, halfsquare, sixth: abc.abs(), sign })
}

/// Isotropic monomial families on Lambda^2(Z^6) used by the geography
/// bounds, given as positions in the degree-2 monomial basis.
/// Family 1 (7-dim) is isotropic for every canonical class; family 2
/// (10-dim) when c = 0 (or mod a prime dividing c); family 3 (12-dim) when
/// b = c = 0 (or mod a prime dividing b).
pub fn isotropic_family(which: u8) -> Vec<usize> {
    let pairs: &[[u8; 2]] = match which {
        // Family 2 with the three pairs that pair into c x5x6 removed; any
        // two members wedge to zero against a x1x2 + b x3x4 + c x5x6.
        1 => &[[1, 2], [1, 3], [1, 4], [1, 5], [1, 6], [3, 5], [3, 6]],
        2 => &[
            [1, 2],
            [1, 3],
            [1, 4],
            [1, 5],
            [1, 6],
            [2, 3],
            [2, 4],
            [3, 4],
            [3, 5],
            [3, 6],
        ],
        3 => &[
            [1, 2],
            [1, 3],
            [1, 4],
            [1, 5],
            [1, 6],
            [2, 3],
            [2, 4],
            [2, 5],
            [2, 6],
            [3, 4],
            [3, 5],
            [3, 6],
        ],
        _ => panic!("isotropic family index must be 1, 2, or 3"),
    };
    pairs
        .iter()
        .map(|p| MultiIndex::new(6, p.to_vec()).expect("valid pair").rank_position())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::gl_action;
    use crate::forms::Parity;

    fn kv6(terms: &[(i64, [u8; 2])]) -> KVector {
        let mut w = KVector::zero(6, 2).unwrap();
        for (c, p) in terms {
            w = w.add(&KVector::monomial(6, p, BigInt::from(*c)).unwrap()).unwrap();
        }
        w
    }

    #[test]
    fn pairing_examples() {
        // omega = 0 on Z^5: 10x10 zero matrix.
        let z = KVector::zero(5, 1).unwrap();
        let pf = pairing_gram(&z).unwrap();
        assert_eq!(pf.form.dim, 10);
        assert!(pf.form.gram.data.iter().all(|v| v.is_zero()));

        // omega = 1 on Z^4: the wedge form on Lambda^2(Z^4) is 3H.
        let one = KVector::monomial(4, &[], BigInt::one()).unwrap();
        let pf = pairing_gram(&one).unwrap();
        let inv = pf.form.invariants();
        assert_eq!((inv.rank, inv.signature), (6, 0));
        assert_eq!(inv.parity, Parity::Even);
        assert!(inv.unimodular);

        // Canonical symplectic class on Z^6: explicit entries.
        let w = kv6(&[(1, [1, 2]), (1, [3, 4]), (1, [5, 6])]);
        let pf = pairing_gram(&w).unwrap();
        let pos = |p: [u8; 2]| MultiIndex::new(6, p.to_vec()).unwrap().rank_position();
        assert_eq!(pf.form.gram.at(pos([1, 2]), pos([3, 4])), &BigInt::one());
        assert_eq!(pf.form.gram.at(pos([1, 3]), pos([2, 4])), &BigInt::from(-1));
        // Even on the nose: zero diagonal.
        for r in 0..15 {
            assert!(pf.form.gram.at(r, r).is_zero());
        }

        let wrong = KVector::zero(6, 3).unwrap();
        assert!(pairing_gram(&wrong).is_err());
    }

    #[test]
    fn normal_form_6_examples() {
        let w = kv6(&[(1, [1, 2]), (1, [3, 4]), (1, [5, 6])]);
        let nf = normal_form_6(&w).unwrap();
        assert_eq!(
            (&nf.a, &nf.b, &nf.c),
            (&BigInt::one(), &BigInt::one(), &BigInt::one())
        );

        let w = kv6(&[(2, [1, 2]), (3, [3, 4])]);
        let nf = normal_form_6(&w).unwrap();
        assert_eq!(
            (&nf.a, &nf.b, &nf.c),
            (&BigInt::one(), &BigInt::from(6), &BigInt::zero())
        );

        let w = kv6(&[(1, [1, 2]), (1, [1, 3])]);
        let nf = normal_form_6(&w).unwrap();
        assert_eq!(
            (&nf.a, &nf.b, &nf.c),
            (&BigInt::one(), &BigInt::zero(), &BigInt::zero())
        );

        let nf = normal_form_6(&KVector::zero(6, 2).unwrap()).unwrap();
        assert!(nf.a.is_zero() && nf.b.is_zero() && nf.c.is_zero());
    }

    #[test]
    fn normal_form_6_idempotent_and_negative_c() {
        let w = canonical_omega_6(&BigInt::from(2), &BigInt::from(4), &BigInt::from(-8));
        let nf = normal_form_6(&w).unwrap();
        assert_eq!(
            (&nf.a, &nf.b, &nf.c),
            (&BigInt::from(2), &BigInt::from(4), &BigInt::from(-8))
        );
        // Idempotence: normal form of the canonical class is itself.
        let nf2 = normal_form_6(&nf.canonical_class()).unwrap();
        assert_eq!((&nf2.a, &nf2.b, &nf2.c), (&nf.a, &nf.b, &nf.c));
    }

    #[test]
    fn normal_form_6_gl_invariance() {
        let w = kv6(&[(2, [1, 2]), (3, [3, 4]), (-6, [1, 5]), (4, [2, 6]), (5, [4, 5])]);
        let base = normal_form_6(&w).unwrap();
        // Determinant-1 basis change preserves the triple.
        let b = BasisChange::from_rows(&[
            vec![1, 2, 0, 0, -1, 3],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 4, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 2, 0],
            vec![0, 0, 0, 0, 1, -5],
            vec![0, 0, 0, 0, 0, 1],
        ])
        .unwrap();
        let moved = gl_action(&b, &w).unwrap();
        let nf = normal_form_6(&moved).unwrap();
        assert_eq!((&nf.a, &nf.b, &nf.c), (&base.a, &base.b, &base.c));

        // Determinant -1 flips the sign of c.
        let refl = BasisChange::from_rows(&[
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 0, -1],
        ])
        .unwrap();
        let w = canonical_omega_6(&BigInt::one(), &BigInt::from(2), &BigInt::from(4));
        let moved = gl_action(&refl, &w).unwrap();
        let nf = normal_form_6(&moved).unwrap();
        assert_eq!(
            (&nf.a, &nf.b, &nf.c),
            (&BigInt::one(), &BigInt::from(2), &BigInt::from(-4))
        );
    }

    #[test]
    fn normal_form_5_examples() {
        let z = KVector::zero(5, 1).unwrap();
        assert!(normal_form_5(&z).unwrap().k.is_zero());

        let w = KVector::monomial(5, &[1], BigInt::from(2))
            .unwrap()
            .add(&KVector::monomial(5, &[3], BigInt::from(4)).unwrap())
            .unwrap();
        assert_eq!(normal_form_5(&w).unwrap().k, BigInt::from(2));

        let w = KVector::monomial(5, &[1], BigInt::from(3))
            .unwrap()
            .add(&KVector::monomial(5, &[2], BigInt::from(5)).unwrap())
            .unwrap();
        assert_eq!(normal_form_5(&w).unwrap().k, BigInt::one());
    }

    #[test]
    fn triple_invariant_examples() {
        let w = kv6(&[(1, [1, 2]), (1, [3, 4]), (1, [5, 6])]);
        let ti = triple_invariants(&w).unwrap();
        assert_eq!(
            (ti.content, ti.halfsquare, ti.sixth, ti.sign),
            (BigInt::one(), BigInt::one(), BigInt::one(), 1)
        );

        let w = kv6(&[(2, [1, 2]), (3, [3, 4])]);
        let ti = triple_invariants(&w).unwrap();
        assert_eq!(
            (ti.content, ti.halfsquare, ti.sixth, ti.sign),
            (BigInt::one(), BigInt::from(6), BigInt::zero(), 1)
        );

        let ti = triple_invariants(&KVector::zero(6, 2).unwrap()).unwrap();
        assert_eq!(
            (ti.content, ti.halfsquare, ti.sixth, ti.sign),
            (BigInt::zero(), BigInt::zero(), BigInt::zero(), 1)
        );
    }

    /// Check that a set of monomial-basis positions spans an isotropic
    /// subspace of the pairing form.
    fn assert_isotropic(pf: &PairingForm, positions: &[usize]) {
        for &r in positions {
            for &s in positions {
                assert!(
                    pf.form.gram.at(r, s).is_zero(),
                    "entry ({r},{s}) nonzero for {:?}",
                    pf.omega
                );
            }
        }
    }

    #[test]
    fn isotropic_families_hold() {
        for (a, b, c) in [(1i64, 1, 1), (2, 4, 8), (1, 3, 0), (5, 0, 0)] {
            let w = canonical_omega_6(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c));
            let pf = pairing_gram(&w).unwrap();
            assert_isotropic(&pf, &isotropic_family(1));
            if c == 0 {
                assert_isotropic(&pf, &isotropic_family(2));
            }
            if b == 0 && c == 0 {
                assert_isotropic(&pf, &isotropic_family(3));
            }
        }
    }
}
