//! Bounded search over degree-4 classes on Z^8 whose induced pairing on the
//! degree-2 monomial basis is unimodular, classifying each hit as 14H or
//! E8 + 10H. The decomposable-sums family runs a deterministic, seeded local
//! search over signed sums of monomials; hits are re-verified through an
//! independent slow path before being reported.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exterior::{binomial, KVector, MultiIndex};
use crate::forms::{classify_indefinite_unimodular, FormInvariants, SymIntForm, UnimodularClass};
use crate::matrix::IntMat;
use crate::par;
use crate::{Error, Result};

const N: usize = 8;
const DIM2: usize = 28; // C(8,2)
const DIM4: usize = 70; // C(8,4)

/// Candidate family for the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    FullGrid,
    DecomposableSums,
    Random { seed: u64, trials: u64 },
}

/// Search parameters. `budget` caps the number of candidate evaluations; the
/// search refuses up front when the family's estimate exceeds it.
#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub family: Family,
    pub coefficient_bound: i64,
    pub support_bound: usize,
    pub dedupe: bool,
    pub budget: u64,
    pub restarts: usize,
}

impl Default for SearchSpec {
    fn default() -> Self {
        SearchSpec {
            family: Family::DecomposableSums,
            coefficient_bound: 1,
            support_bound: 7,
            dedupe: true,
            budget: 10_000_000,
            restarts: 64,
        }
    }
}

/// A verified unimodular candidate.
#[derive(Debug, Clone)]
pub struct SearchHit {
    pub omega: KVector,
    pub invariants: FormInvariants,
    pub classification: UnimodularClass,
}

/// Search output: the ordered hit list and candidate counts by signature of
/// the unimodular hits (`None` key counts non-hit evaluations).
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub hits: Vec<SearchHit>,
    pub evaluated: u64,
    pub hits_by_signature: BTreeMap<i64, u64>,
}

/// Sign table: for disjoint degree-2 positions (r, s), the degree-4 position
/// of the complementary monomial and the sign of m_r ^ m_s ^ m_t.
struct SignTable {
    /// (complement position, sign) or None when the pairs intersect.
    entries: Vec<Option<(usize, i64)>>,
}

fn permutation_sign(seq: &[u8]) -> i64 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

impl SignTable {
    fn build() -> SignTable {
        let pairs: Vec<[u8; 2]> = (0..DIM2)
            .map(|p| {
                let mi = MultiIndex::from_position(N as u8, 2, p).expect("position");
                [mi.indices[0], mi.indices[1]]
            })
            .collect();
        let mut entries = vec![None; DIM2 * DIM2];
        for r in 0..DIM2 {
            for s in 0..DIM2 {
                let [a, b] = pairs[r];
                let [c, d] = pairs[s];
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let used = [a, b, c, d];
                let rest: Vec<u8> =
                    (1..=N as u8).filter(|i| !used.contains(i)).collect();
                let mut seq = vec![a, b, c, d];
                seq.extend_from_slice(&rest);
                let sign = permutation_sign(&seq);
                let t = MultiIndex::new(N as u8, rest).expect("quad").rank_position();
                entries[r * DIM2 + s] = Some((t, sign));
            }
        }
        SignTable { entries }
    }

    fn gram(&self, coeffs: &[i64; DIM4]) -> [[i64; DIM2]; DIM2] {
        let mut g = [[0i64; DIM2]; DIM2];
        for r in 0..DIM2 {
            for s in 0..DIM2 {
                if let Some((t, sign)) = self.entries[r * DIM2 + s] {
                    g[r][s] = sign * coeffs[t];
                }
            }
        }
        g
    }
}

const P: u64 = 2_147_483_647; // 2^31 - 1, prime

fn modinv_p(a: u64) -> u64 {
    // Fermat inverse mod the fixed prime.
    let mut acc = 1u64;
    let mut b = a % P;
    let mut e = P - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

/// Rank of the Gram matrix mod P (fast guidance for the local search).
fn rank_mod(g: &[[i64; DIM2]; DIM2]) -> usize {
    let mut a = [[0u64; DIM2]; DIM2];
    for i in 0..DIM2 {
        for j in 0..DIM2 {
            a[i][j] = g[i][j].rem_euclid(P as i64) as u64;
        }
    }
    let mut rank = 0;
    let mut row = 0;
    for col in 0..DIM2 {
        let piv = (row..DIM2).find(|&i| a[i][col] != 0);
        let piv = match piv {
            Some(i) => i,
            None => continue,
        };
        a.swap(row, piv);
        let inv = modinv_p(a[row][col]);
        for i in row + 1..DIM2 {
            if a[i][col] == 0 {
                continue;
            }
            let f = a[i][col] * inv % P;
            for j in col..DIM2 {
                a[i][j] = (a[i][j] + P * P - f * a[row][j] % P) % P;
            }
        }
        rank += 1;
        row += 1;
        if row == DIM2 {
            break;
        }
    }
    rank
}

/// Exact |det| via checked i128 Bareiss; None on overflow (treated as a bad
/// candidate by the objective, and recomputed exactly for reported hits).
fn det_abs_i128(g: &[[i64; DIM2]; DIM2]) -> Option<i128> {
    let mut a = [[0i128; DIM2]; DIM2];
    for i in 0..DIM2 {
        for j in 0..DIM2 {
            a[i][j] = g[i][j] as i128;
        }
    }
    let mut prev: i128 = 1;
    for k in 0..DIM2 - 1 {
        if a[k][k] == 0 {
            let swap = (k + 1..DIM2).find(|&i| a[i][k] != 0)?;
            a.swap(k, swap);
            // Sign irrelevant: we return the absolute value.
        }
        for i in k + 1..DIM2 {
            for j in k + 1..DIM2 {
                let num = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    Some(a[DIM2 - 1][DIM2 - 1].abs())
}

/// Objective for the local search (0 = unimodular): rank deficiency weighted
/// heavily, then distance of |det| from 1.
fn objective(table: &SignTable, coeffs: &[i64; DIM4]) -> i64 {
    let g = table.gram(coeffs);
    let rank = rank_mod(&g);
    if rank < DIM2 {
        return 1_000_000 * (DIM2 - rank) as i64;
    }
    match det_abs_i128(&g) {
        // Full rank mod P but zero determinant cannot happen; |det| >= 1.
        Some(d) => ((d - 1).min(100_000)) as i64,
        None => 100_000,
    }
}

fn coeffs_to_kvector(coeffs: &[i64; DIM4]) -> KVector {
    let mut w = KVector::zero(N as u8, 4).expect("shape");
    for (t, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            let mi = MultiIndex::from_position(N as u8, 4, t).expect("position");
            let m = KVector::monomial(N as u8, &mi.indices, BigInt::from(c)).expect("monomial");
            w = w.add(&m).expect("shape");
        }
    }
    w
}

/// The slow, independent pairing computation used for verification: the Gram
/// matrix of (x, y) -> top(m_r ^ m_s ^ omega) built entirely from wedge
/// products.
pub fn pairing_gram_slow(omega: &KVector) -> Result<IntMat> {
    let dim = binomial(usize::from(omega.n), 2);
    let mut g = IntMat::zero(dim, dim);
    for r in 0..dim {
        let mr = MultiIndex::from_position(omega.n, 2, r)?;
        let mr = KVector::monomial(omega.n, &mr.indices, BigInt::one())?;
        for s in 0..dim {
            let ms = MultiIndex::from_position(omega.n, 2, s)?;
            let ms = KVector::monomial(omega.n, &ms.indices, BigInt::one())?;
            let prod = mr.wedge(&ms)?.wedge(omega)?;
            g.set(r, s, prod.top_coefficient()?);
        }
    }
    Ok(g)
}

/// Build a verified hit from a coefficient vector, or None when it is not a
/// valid unimodular candidate after exact recomputation.
fn certify(coeffs: &[i64; DIM4], table: &SignTable) -> Result<Option<SearchHit>> {
    let g64 = table.gram(coeffs);
    let mut gram = IntMat::zero(DIM2, DIM2);
    for i in 0..DIM2 {
        for j in 0..DIM2 {
            gram.set(i, j, BigInt::from(g64[i][j]));
        }
    }
    let form = SymIntForm::new(gram)?;
    let inv = form.invariants();
    if !inv.unimodular || inv.rank != DIM2 {
        return Ok(None);
    }
    if inv.signature.rem_euclid(8) != 0 {
        return Err(Error::Internal(format!(
            "unimodular even candidate with signature {} not divisible by 8",
            inv.signature
        )));
    }
    let classification = classify_indefinite_unimodular(&inv, false)?;
    let hit = SearchHit { omega: coeffs_to_kvector(coeffs), invariants: inv, classification };
    verify_hit(&hit)?;
    Ok(Some(hit))
}

/// Mutation-based local search from one seeded restart.
fn run_restart(
    spec: &SearchSpec,
    table: &SignTable,
    restart: usize,
    steps: u64,
) -> Result<Vec<[i64; DIM4]>> {
    const SEED_BASE: u64 = 0x6765_6f67_3472_7321;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED_BASE ^ restart as u64);
    let bound = spec.coefficient_bound;
    let support = spec.support_bound.min(DIM4).max(1);
    let rand_coeff = |rng: &mut ChaCha8Rng| -> i64 {
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-bound..=bound);
        }
        c
    };
    let mut coeffs = [0i64; DIM4];
    for _ in 0..support {
        let pos = rng.gen_range(0..DIM4);
        coeffs[pos] = rand_coeff(&mut rng);
    }
    let mut best = objective(table, &coeffs);
    let mut found = Vec::new();
    for _ in 0..steps {
        if best == 0 {
            found.push(coeffs);
            // Perturb away from the hit and keep exploring.
            let pos = rng.gen_range(0..DIM4);
            coeffs[pos] = if coeffs[pos] == 0 { rand_coeff(&mut rng) } else { 0 };
            best = objective(table, &coeffs);
            continue;
        }
        let mut cand = coeffs;
        match rng.gen_range(0..4u8) {
            0 => {
                // Re-randomize one position.
                let pos = rng.gen_range(0..DIM4);
                cand[pos] = rand_coeff(&mut rng);
            }
            1 => {
                // Clear one nonzero position.
                let nz: Vec<usize> = (0..DIM4).filter(|&t| cand[t] != 0).collect();
                if let Some(&pos) = nz.get(rng.gen_range(0..nz.len().max(1)) % nz.len().max(1)) {
                    cand[pos] = 0;
                }
            }
            2 => {
                // Move a coefficient to a fresh position.
                let nz: Vec<usize> = (0..DIM4).filter(|&t| cand[t] != 0).collect();
                if !nz.is_empty() {
                    let from = nz[rng.gen_range(0..nz.len())];
                    let to = rng.gen_range(0..DIM4);
                    cand[to] = cand[from];
                    if to != from {
                        cand[from] = 0;
                    }
                }
            }
            _ => {
                // Flip a sign.
                let nz: Vec<usize> = (0..DIM4).filter(|&t| cand[t] != 0).collect();
                if !nz.is_empty() {
                    let pos = nz[rng.gen_range(0..nz.len())];
                    cand[pos] = -cand[pos];
                }
            }
        }
        if cand.iter().filter(|&&c| c != 0).count() > support {
            continue;
        }
        let obj = objective(table, &cand);
        if obj <= best {
            coeffs = cand;
            best = obj;
        }
    }
    if best == 0 && !found.contains(&coeffs) {
        found.push(coeffs);
    }
    Ok(found)
}

fn signature_key(hit: &SearchHit) -> String {
    format!(
        "{}|{}|{}|{}",
        hit.invariants.rank, hit.invariants.signature, hit.invariants.parity, hit.classification
    )
}

/// Run the search. Deterministic for a fixed spec, including under the
/// parallel feature: restarts are seeded independently and merged in index
/// order. Hits with signature +-8 are appended to `certificate_sink`
/// immediately when provided.
pub fn run_search(
    spec: &SearchSpec,
    certificate_sink: Option<&std::path::Path>,
) -> Result<SearchOutcome> {
    if spec.coefficient_bound < 1 || spec.support_bound < 1 {
        return Err(Error::Domain("bounds must be positive".into()));
    }
    let table = SignTable::build();
    match &spec.family {
        Family::FullGrid => {
            // (2B + 1)^70 candidates: always beyond any sane budget.
            let est = BigInt::from(2 * spec.coefficient_bound + 1).pow(DIM4 as u32);
            Err(Error::Budget(format!(
                "full grid over {DIM4} coefficients has {est} candidates (budget {})",
                spec.budget
            )))
        }
        Family::Random { seed, trials } => {
            if *trials > spec.budget {
                return Err(Error::Budget(format!(
                    "{trials} random trials exceed the budget {}",
                    spec.budget
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut outcome = SearchOutcome {
                hits: Vec::new(),
                evaluated: 0,
                hits_by_signature: BTreeMap::new(),
            };
            let mut seen = Vec::new();
            for _ in 0..*trials {
                let mut coeffs = [0i64; DIM4];
                for _ in 0..spec.support_bound {
                    let pos = rng.gen_range(0..DIM4);
                    let mut c = 0;
                    while c == 0 {
                        c = rng.gen_range(-spec.coefficient_bound..=spec.coefficient_bound);
                    }
                    coeffs[pos] = c;
                }
                outcome.evaluated += 1;
                if objective(&table, &coeffs) == 0 {
                    if let Some(hit) = certify(&coeffs, &table)? {
                        record_hit(spec, &mut outcome, &mut seen, hit, certificate_sink)?;
                    }
                }
            }
            Ok(outcome)
        }
        Family::DecomposableSums => {
            let steps: u64 = 1500;
            let est = spec.restarts as u64 * steps;
            if est > spec.budget {
                return Err(Error::Budget(format!(
                    "{} restarts x {steps} steps exceed the budget {}",
                    spec.restarts, spec.budget
                )));
            }
            let per_restart: Vec<Result<Vec<[i64; DIM4]>>> =
                par::indexed_map(spec.restarts, |r| run_restart(spec, &table, r, steps));
            let mut outcome = SearchOutcome {
                hits: Vec::new(),
                evaluated: est,
                hits_by_signature: BTreeMap::new(),
            };
            let mut seen = Vec::new();
            for found in per_restart {
                for coeffs in found? {
                    if let Some(hit) = certify(&coeffs, &table)? {
                        record_hit(spec, &mut outcome, &mut seen, hit, certificate_sink)?;
                    }
                }
            }
            Ok(outcome)
        }
    }
}

fn record_hit(
    spec: &SearchSpec,
    outcome: &mut SearchOutcome,
    seen: &mut Vec<String>,
    hit: SearchHit,
    certificate_sink: Option<&std::path::Path>,
) -> Result<()> {
    let key = signature_key(&hit);
    if spec.dedupe && seen.contains(&key) {
        return Ok(());
    }
    seen.push(key);
    *outcome.hits_by_signature.entry(hit.invariants.signature).or_insert(0) += 1;
    if hit.invariants.signature.abs() == 8 {
        if let Some(path) = certificate_sink {
            use std::io::Write;
            let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
            f.write_all(certificate(&hit).as_bytes())?;
        }
    }
    outcome.hits.push(hit);
    Ok(())
}

/// Serialize a hit as a certificate: the class, its invariant row, and the
/// classification line.
pub fn certificate(hit: &SearchHit) -> String {
    format!(
        "{}{}\n{}\nclassification: {}\n",
        hit.omega.to_text(),
        FormInvariants::tsv_header(),
        hit.invariants.to_tsv_row(),
        hit.classification
    )
}

/// Parse a certificate produced by `certificate`.
pub fn parse_certificate(text: &str) -> Result<SearchHit> {
    let lines: Vec<&str> = text.lines().collect();
    let inv_header = lines
        .iter()
        .position(|l| l.starts_with("rank\t"))
        .ok_or_else(|| Error::Parse { line: 0, msg: "missing invariants header".into() })?;
    let omega = KVector::from_text(&lines[..inv_header].join("\n"))?;
    let invariants = FormInvariants::from_tsv_row(
        lines
            .get(inv_header + 1)
            .ok_or_else(|| Error::Parse { line: inv_header + 2, msg: "missing invariants".into() })?,
    )?;
    let class_line = lines
        .get(inv_header + 2)
        .and_then(|l| l.strip_prefix("classification: "))
        .ok_or_else(|| Error::Parse {
            line: inv_header + 3,
            msg: "missing classification".into(),
        })?;
    let classification = parse_classification(class_line)?;
    Ok(SearchHit { omega, invariants, classification })
}

fn parse_classification(s: &str) -> Result<UnimodularClass> {
    let s = s.trim();
    if let Some((plus, rest)) = s.split_once("<+1> + ") {
        let minus = rest.strip_suffix("<-1>").unwrap_or(rest);
        return Ok(UnimodularClass::Diagonal {
            plus: plus.trim().parse().map_err(|_| Error::Parse { line: 0, msg: s.into() })?,
            minus: minus.trim().parse().map_err(|_| Error::Parse { line: 0, msg: s.into() })?,
        });
    }
    let rohlin = s.contains("Rohlin");
    let core = s.split(' ').next().unwrap_or(s);
    let (e8, h) = match core.split_once("E8+") {
        Some((k, rest)) => {
            let h = rest.strip_suffix('H').ok_or_else(|| Error::Parse { line: 0, msg: s.into() })?;
            (
                k.parse().map_err(|_| Error::Parse { line: 0, msg: s.into() })?,
                h.parse().map_err(|_| Error::Parse { line: 0, msg: s.into() })?,
            )
        }
        None => {
            let h = core.strip_suffix('H').ok_or_else(|| Error::Parse { line: 0, msg: s.into() })?;
            (0, h.parse().map_err(|_| Error::Parse { line: 0, msg: s.into() })?)
        }
    };
    Ok(UnimodularClass::Even { e8, h, rohlin_violation: rohlin })
}

/// Independent verification of a hit: recompute the Gram matrix through the
/// wedge-product oracle, re-derive the invariants with independent
/// determinant methods (fraction-free vs modular vs Smith), and check the
/// classification arithmetic 28 = 8|k| + 2l.
pub fn verify_hit(hit: &SearchHit) -> Result<()> {
    if hit.omega.n != N as u8 || hit.omega.k != 4 {
        return Err(Error::Domain("hit class must have degree 4 on Z^8".into()));
    }
    let gram = pairing_gram_slow(&hit.omega)?;
    let form = SymIntForm::new(gram)?;
    let inv = form.invariants();
    if inv != hit.invariants {
        // Name the first differing field/entry for diagnosis.
        return Err(Error::Regression(format!(
            "recomputed invariants {:?} differ from stored {:?}",
            inv, hit.invariants
        )));
    }
    if inv.rank != DIM2 || !inv.unimodular {
        return Err(Error::Regression(format!(
            "hit is not a rank-{DIM2} unimodular form (rank {}, det {})",
            inv.rank, inv.determinant
        )));
    }
    // Independent determinant checks.
    let det = form.gram.det_bareiss();
    if det.abs() != BigInt::one() {
        return Err(Error::Regression(format!("fraction-free determinant {det} not a unit")));
    }
    for p in [2_147_483_647u64, 1_000_000_007] {
        let dm = form.gram.det_mod_p(p);
        let expect = det.mod_floor(&BigInt::from(p));
        if BigInt::from(dm) != expect {
            return Err(Error::Regression(format!(
                "modular determinant mismatch mod {p}: {dm} vs {expect}"
            )));
        }
    }
    if form.gram.smith_divisors().iter().any(|d| !d.is_one()) {
        return Err(Error::Regression("Smith divisors of a unimodular form must all be 1".into()));
    }
    match &hit.classification {
        UnimodularClass::Even { e8, h, .. } => {
            if 8 * e8.unsigned_abs() as i64 + 2 * h != DIM2 as i64 {
                return Err(Error::Regression(format!(
                    "classification {}E8+{}H does not have rank {DIM2}",
                    e8, h
                )));
            }
            if 8 * e8 != inv.signature {
                return Err(Error::Regression(format!(
                    "classification signature {} does not match form signature {}",
                    8 * e8,
                    inv.signature
                )));
            }
        }
        UnimodularClass::Diagonal { .. } => {
            return Err(Error::Regression(
                "hit pairing is even; a diagonal classification is impossible".into(),
            ));
        }
    }
    Ok(())
}

use num_integer::Integer;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_class_has_low_rank() {
        // x1x2x3x4 + x5x6x7x8: mixed degree-2 monomials pair to zero.
        let mut coeffs = [0i64; DIM4];
        let t1 = MultiIndex::new(8, vec![1, 2, 3, 4]).unwrap().rank_position();
        let t2 = MultiIndex::new(8, vec![5, 6, 7, 8]).unwrap().rank_position();
        coeffs[t1] = 1;
        coeffs[t2] = 1;
        let table = SignTable::build();
        let g = table.gram(&coeffs);
        assert_eq!(rank_mod(&g), 12);
        // Cross-check the fast Gram against the wedge oracle.
        let slow = pairing_gram_slow(&coeffs_to_kvector(&coeffs)).unwrap();
        for i in 0..DIM2 {
            for j in 0..DIM2 {
                assert_eq!(BigInt::from(g[i][j]), slow.at(i, j).clone(), "({i},{j})");
            }
        }
    }

    #[test]
    fn full_grid_refused() {
        let spec = SearchSpec { family: Family::FullGrid, ..SearchSpec::default() };
        assert!(matches!(run_search(&spec, None), Err(Error::Budget(_))));
    }

    #[test]
    fn decomposable_search_finds_14h() {
        let spec = SearchSpec::default();
        let out = run_search(&spec, None).unwrap();
        assert!(!out.hits.is_empty(), "no unimodular hit found");
        let sigma0 = out
            .hits
            .iter()
            .find(|h| h.invariants.signature == 0)
            .expect("no sigma = 0 hit");
        assert_eq!(
            sigma0.classification,
            UnimodularClass::Even { e8: 0, h: 14, rohlin_violation: false }
        );
        verify_hit(sigma0).unwrap();
    }

    #[test]
    fn search_is_deterministic() {
        let spec = SearchSpec { restarts: 8, ..SearchSpec::default() };
        let a = run_search(&spec, None).unwrap();
        let b = run_search(&spec, None).unwrap();
        let key = |o: &SearchOutcome| {
            o.hits.iter().map(|h| h.omega.to_text()).collect::<Vec<_>>()
        };
        assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn certificate_roundtrip_and_corruption() {
        let spec = SearchSpec { restarts: 8, ..SearchSpec::default() };
        let out = run_search(&spec, None).unwrap();
        let hit = &out.hits[0];
        let cert = certificate(hit);
        let back = parse_certificate(&cert).unwrap();
        assert_eq!(back.omega, hit.omega);
        assert_eq!(back.invariants, hit.invariants);
        assert_eq!(back.classification, hit.classification);
        verify_hit(&back).unwrap();

        // Corrupt the stored signature: verification must fail.
        let mut bad = back.clone();
        bad.invariants.signature += 8;
        assert!(verify_hit(&bad).is_err());

        // Zero packaged as a hit: fails (rank 0).
        let mut zero = back.clone();
        zero.omega = KVector::zero(8, 4).unwrap();
        assert!(verify_hit(&zero).is_err());
    }

    #[test]
    fn random_family_runs() {
        let spec = SearchSpec {
            family: Family::Random { seed: 1, trials: 500 },
            coefficient_bound: 2,
            ..SearchSpec::default()
        };
        let out = run_search(&spec, None).unwrap();
        assert_eq!(out.evaluated, 500);
        // Budget refusal.
        let spec = SearchSpec {
            family: Family::Random { seed: 1, trials: 500 },
            budget: 100,
            ..SearchSpec::default()
        };
        assert!(matches!(run_search(&spec, None), Err(Error::Budget(_))));
    }
}
