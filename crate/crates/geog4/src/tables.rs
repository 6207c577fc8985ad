//! Built-in regression suite. Every numerical claim the library reproduces
//! from its source is rechecked here against the recorded value, with a
//! citation string on each row. `run_tables` returns the full row list;
//! any FAIL row is a regression.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::classes::{canonical_omega_6, pairing_gram, triple_invariants};
use crate::constructions::{
    minimize_p_ratio, named_recipe, p_ratio_bound, projective_construction, projective_counts,
    ProjectivePlan,
};
use crate::exterior::{gl_action, BasisChange, KVector};
use crate::forms::{
    classify_indefinite_unimodular, rational_isotropic_dim, FormInvariants, Parity, SymIntForm,
};
use crate::geography::{assemble, builtin_profile, derived_invariants, lower_bound, Resolution};
use crate::search::{run_search, SearchSpec};
use crate::{Error, Result};

/// One regression row: a recorded value, the recomputed value, and the
/// citation for the recorded one.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub id: &'static str,
    pub description: &'static str,
    pub expected: String,
    pub actual: String,
    pub citation: &'static str,
}

impl TableRow {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

pub fn tsv_header() -> &'static str {
    "id\tstatus\texpected\tactual\tdescription\tcitation"
}

pub fn to_tsv_row(row: &TableRow) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}",
        row.id,
        if row.ok() { "OK" } else { "FAIL" },
        row.expected,
        row.actual,
        row.description,
        row.citation
    )
}

/// Render the whole suite as TSV (header + one line per row + summary line).
pub fn render(rows: &[TableRow]) -> String {
    let mut out = String::from(tsv_header());
    out.push('\n');
    let mut failed = 0usize;
    for r in rows {
        out.push_str(&to_tsv_row(r));
        out.push('\n');
        if !r.ok() {
            failed += 1;
        }
    }
    out.push_str(&format!("# {} rows, {} failed\n", rows.len(), failed));
    out
}

/// Run the suite. Computation errors become FAIL rows; the result is Err only
/// when at least one row fails, so callers can map it to the regression exit
/// code after printing.
pub fn run_tables() -> Vec<TableRow> {
    let mut rows = Vec::new();
    let mut push = |id: &'static str,
                    description: &'static str,
                    citation: &'static str,
                    expected: &str,
                    actual: Result<String>| {
        rows.push(TableRow {
            id,
            description,
            expected: expected.to_string(),
            actual: match actual {
                Ok(s) => s,
                Err(e) => format!("error: {e}"),
            },
            citation,
        });
    };

    push(
        "wedge-sign",
        "x1x3 ^ x2x4 over Z^4",
        "Kirk-Livingston, Theorem 5.2(3)",
        "-1",
        (|| {
            let u = KVector::monomial(4, &[1, 3], 1)?;
            let v = KVector::monomial(4, &[2, 4], 1)?;
            Ok(u.wedge(&v)?.top_coefficient()?.to_string())
        })(),
    );

    push(
        "omega-cube",
        "top coefficient of (x1x2+x3x4+x5x6)^3",
        "Kirk-Livingston, proof of Theorem 5.7 (omega^3 = 6abc)",
        "6",
        (|| {
            let w = canonical_omega_6(&BigInt::one(), &BigInt::one(), &BigInt::one());
            Ok(w.wedge(&w)?.wedge(&w)?.top_coefficient()?.to_string())
        })(),
    );

    push(
        "substitution",
        "basis substitution on 2 x1x2 + 3 x3x4 (a=2, b=3, c=1, p=-1, q=1)",
        "Kirk-Livingston, proof of Theorem 5.7 (c(a x1x2 + b x3x4) -> c(x1'x2' + ab x3'x4'))",
        "x1x2 + 6 x3x4",
        (|| {
            let (a, b, p, q) = (2i64, 3i64, -1i64, 1i64);
            let sub = BasisChange::from_rows(&[
                vec![1, 0, -b * q, 0],
                vec![0, p, 0, -b],
                vec![1, 0, a * p, 0],
                vec![0, q, 0, a],
            ])?;
            let omega = KVector::monomial(4, &[1, 2], a)?.add(&KVector::monomial(4, &[3, 4], b)?)?;
            let moved = gl_action(&sub, &omega)?;
            let c12 = moved.coeffs[0].clone();
            let c34 = moved.coeffs[5].clone();
            let support: usize = moved.coeffs.iter().filter(|c| !num_traits::Zero::is_zero(*c)).count();
            if support != 2 {
                return Ok(format!("support {support}"));
            }
            Ok(format!("x1x2 + {} x3x4", c34 / c12))
        })(),
    );

    push(
        "form-H",
        "invariants of the hyperbolic plane",
        "Kirk-Livingston, Section 2.2 (signature 0, denoted H)",
        "rank 2, sigma 0, even, unimodular",
        Ok(describe_form(&SymIntForm::hyperbolic().invariants())),
    );

    push(
        "form-E8",
        "invariants of the E8 form",
        "Kirk-Livingston, Section 2.2 (rank 8 and signature 8, denoted E8)",
        "rank 8, sigma 8, even, unimodular",
        Ok(describe_form(&SymIntForm::e8().invariants())),
    );

    push(
        "classify-14H",
        "rank-28 even unimodular form of signature 0",
        "Kirk-Livingston, Section 5.1 Example (equivalent to either 14H or E8+10H)",
        "14H",
        (|| {
            let f = sum_hyperbolic(14);
            Ok(classify_indefinite_unimodular(&f.invariants(), false)?.to_string())
        })(),
    );

    push(
        "classify-E8-10H",
        "rank-28 even unimodular form of signature 8, smooth spin",
        "Kirk-Livingston, Section 5.1 Question (such an M cannot be smooth)",
        "1E8+10H (Rohlin-violating for smooth spin)",
        (|| {
            let mut f = SymIntForm::e8();
            for _ in 0..10 {
                f = f.direct_sum(&SymIntForm::hyperbolic());
            }
            Ok(classify_indefinite_unimodular(&f.invariants(), true)?.to_string())
        })(),
    );

    push(
        "isotropic-12",
        "rational isotropic dimension of the pairing of x1x2 on Z^6",
        "Kirk-Livingston, proof of Theorem 5.8 (the 12-dimensional subspace V_3 is isotropic)",
        "12",
        (|| {
            let w = KVector::monomial(6, &[1, 2], 1)?;
            let pf = pairing_gram(&w)?;
            Ok(rational_isotropic_dim(&pf.form.invariants(), pf.form.dim).to_string())
        })(),
    );

    push(
        "pairing-entries",
        "pairing entries (x1x2, x3x4) and (x1x3, x2x4) for x1x2+x3x4+x5x6",
        "Kirk-Livingston, Theorem 5.2(3) ((x_ix_j)(x_kx_l) = -(x_ix_k)(x_jx_l))",
        "1, -1",
        (|| {
            let w = canonical_omega_6(&BigInt::one(), &BigInt::one(), &BigInt::one());
            let pf = pairing_gram(&w)?;
            // Positions: x1x2 = 0, x1x3 = 1, x2x4 = 6, x3x4 = 9.
            Ok(format!("{}, {}", pf.form.gram.at(0, 9), pf.form.gram.at(1, 6)))
        })(),
    );

    push(
        "triple-invariants",
        "(content, omega^2/2-content, omega^3/6) for x1x2+x3x4+x5x6",
        "Kirk-Livingston, Theorem 5.7 (a, ab, abc for the canonical class)",
        "1, 1, 1",
        (|| {
            let w = canonical_omega_6(&BigInt::one(), &BigInt::one(), &BigInt::one());
            let t = triple_invariants(&w)?;
            Ok(format!("{}, {}, {}", t.content, t.halfsquare, t.sixth))
        })(),
    );

    push(
        "qlower-free",
        "lower bound for the free group F_3 at sigma = 5",
        "Kirk-Livingston, Section 4.1 (q_{F_n}(sigma) = |sigma| + 2 - 2n)",
        "1",
        (|| Ok(lower_bound(&builtin_profile("free_n=3")?, 5)?.0.to_string()))(),
    );

    push(
        "qlower-trivial",
        "q for the trivial group at sigma = 3",
        "Kirk-Livingston, Section 4.1 (q_{e}(sigma) = |sigma| + 2)",
        "exact 5",
        (|| {
            let qf = assemble(&builtin_profile("trivial")?, 16)?;
            Ok(describe_resolution(&qf.row(3)?.resolution))
        })(),
    );

    push(
        "qlower-z4-mult",
        "lower bound for Z^4 with alpha = 2[T] at sigma = 0",
        "Kirk-Livingston, Section 5.2.2 (chi(M) >= 2 - 8 + 12 = 6)",
        "6",
        (|| Ok(lower_bound(&builtin_profile("z4_k=2")?, 0)?.0.to_string()))(),
    );

    push(
        "q-z5-kbig",
        "q for Z^5 with alpha = 2 x1 cap [T] at sigma = 0",
        "Kirk-Livingston, Theorem 5.6(4) (max{12, |sigma|+6} <= ... <= |sigma|+12)",
        "exact 12",
        (|| {
            let qf = assemble(&builtin_profile("z5_k=2")?, 16)?;
            Ok(describe_resolution(&qf.row(0)?.resolution))
        })(),
    );

    push(
        "q-z5-alpha0",
        "q for Z^5 with alpha = 0 at sigma in {0, 5}",
        "Kirk-Livingston, Theorem 5.6(2) (q = |sigma| + 12)",
        "exact 12, exact 17",
        (|| {
            let qf = assemble(&builtin_profile("z5_k=0")?, 16)?;
            Ok(format!(
                "{}, {}",
                describe_resolution(&qf.row(0)?.resolution),
                describe_resolution(&qf.row(5)?.resolution)
            ))
        })(),
    );

    push(
        "q-z6-000",
        "q for Z^6 with (a,b,c) = (0,0,0) at sigma = 4",
        "Kirk-Livingston, Theorem 5.8(1) (q_{0,0,0}(sigma) = 20 + |sigma|)",
        "exact 24",
        (|| {
            let qf = assemble(&builtin_profile("z6_abc=0,0,0")?, 16)?;
            Ok(describe_resolution(&qf.row(4)?.resolution))
        })(),
    );

    push(
        "q-z6-master",
        "q(Z^6) at sigma = 0, 1, 4",
        "Kirk-Livingston, Section 5.2.4 display (6, 7, |sigma| + 4)",
        "exact 6, exact 7, exact 8",
        (|| {
            let qf = assemble(&builtin_profile("zn=6")?, 16)?;
            Ok(format!(
                "{}, {}, {}",
                describe_resolution(&qf.row(0)?.resolution),
                describe_resolution(&qf.row(1)?.resolution),
                describe_resolution(&qf.row(4)?.resolution)
            ))
        })(),
    );

    push(
        "q-z6-111-derived",
        "q_{1,1,1} at sigma = -2, 0, 2 with the derived flag at 2",
        "Kirk-Livingston, Theorem 5.8(4) (|sigma| + r, r in {4,6}; the engine resolves the open side)",
        "exact 6, exact 6, exact 8 derived",
        (|| {
            let qf = assemble(&builtin_profile("z6_abc=1,1,1")?, 16)?;
            let d = |s: i64| -> Result<String> {
                let row = qf.row(s)?;
                let mut out = describe_resolution(&row.resolution);
                if row.derived {
                    out.push_str(" derived");
                }
                Ok(out)
            };
            Ok(format!("{}, {}, {}", d(-2)?, d(0)?, d(2)?))
        })(),
    );

    push(
        "derived-z6",
        "q(Z^6), p(Z^6) and the minimum points",
        "Kirk-Livingston, Sections 5.2.4 and 6.3 (the minimum points are exactly -2, 0, 2)",
        "q 6, p 4, minima [-2, 0, 2]",
        (|| {
            let di = derived_invariants(&assemble(&builtin_profile("zn=6")?, 16)?)?;
            Ok(format!("q {}, p {}, minima {:?}", di.q_group, di.p_group, di.minimum_points))
        })(),
    );

    push(
        "derived-z5",
        "q(Z^5), p(Z^5) and the minimum points",
        "Kirk-Livingston, Theorem 5.6(1) (q(Z^5) = 6, p(Z^5) = 6)",
        "q 6, p 6, minima [0]",
        (|| {
            let di = derived_invariants(&assemble(&builtin_profile("zn=5")?, 16)?)?;
            Ok(format!("q {}, p {}, minima {:?}", di.q_group, di.p_group, di.minimum_points))
        })(),
    );

    push(
        "derived-trivial",
        "q, p and the minimum points for the trivial group",
        "Kirk-Livingston, Section 4.1 with the Section 5.2.4 p-list at n = 0",
        "q 2, p 2, minima [0]",
        (|| {
            let di = derived_invariants(&assemble(&builtin_profile("trivial")?, 16)?)?;
            Ok(format!("q {}, p {}, minima {:?}", di.q_group, di.p_group, di.minimum_points))
        })(),
    );

    push(
        "p-list",
        "p(Z^n) for n = 0..7",
        "Kirk-Livingston, Section 5.2.4 (p(Z^n) = 2, 0, 0, 2, 0, 6, 4, 2)",
        "[2, 0, 0, 2, 0, 6, 4, 2]",
        (|| {
            let mut ps = Vec::new();
            for n in 0..=7u32 {
                let tag = if n == 0 { "trivial".to_string() } else { format!("zn={n}") };
                let window = if n == 7 { 56 } else { 16 };
                let di = derived_invariants(&assemble(&builtin_profile(&tag)?, window)?)?;
                ps.push(di.p_group);
            }
            Ok(format!("{ps:?}"))
        })(),
    );

    push(
        "sym-product",
        "the symmetric-product block S_6 (k = 3)",
        "Kirk-Livingston, Section 5.2.4 (chi(S_6) = 6 and sigma(S_6) = -2)",
        "beta1 6, chi 6, sigma -2",
        (|| {
            let b = crate::constructions::sym_product(3)?;
            Ok(format!("beta1 {}, chi {}, sigma {}", b.beta1, b.chi, b.sigma))
        })(),
    );

    push(
        "recipe-z4",
        "surgery recipe for Z^4 with a non-primitive class",
        "Kirk-Livingston, Section 5.2.2 (chi(M) = 6 and sigma(M) = 0)",
        "chi 6, sigma 0",
        describe_recipe("z4_kbig"),
    );

    push(
        "recipe-z5-k0",
        "surgery recipe for Z^5 with alpha = 0",
        "Kirk-Livingston, Section 5.2.3 (chi(M) = 12 and sigma(M) = 0)",
        "chi 12, sigma 0",
        describe_recipe("z5_k0"),
    );

    push(
        "recipe-z6-general",
        "surgery recipe for Z^6, arbitrary (a,b,c)",
        "Kirk-Livingston, proof of Theorem 5.8 (chi(M) = 20 and sigma(M) = 0 for any a,b,c)",
        "chi 20, sigma 0",
        describe_recipe("z6_general"),
    );

    push(
        "projective-counts",
        "point and line counts of the projective geometry PG(3, 5)",
        "Kirk-Livingston, Section 6.3 (G = Z^156 and sigma(W) = 1612 = 806 * 2)",
        "points 156, lines 806",
        (|| {
            let (n, l) = projective_counts(5, 3)?;
            Ok(format!("points {n}, lines {l}"))
        })(),
    );

    push(
        "projective-construction",
        "the PG(3, 5) construction over reversed S_6",
        "Kirk-Livingston, Section 6.3 (sigma = 1612 and chi = 12586)",
        "sigma 1612, chi 12586",
        (|| {
            let plan =
                ProjectivePlan { p: 5, k: 3, x: crate::constructions::sym_product(3)?.reversed() };
            let b = projective_construction(&plan)?;
            Ok(format!("sigma {}, chi {}", b.sigma, b.chi))
        })(),
    );

    push(
        "ratio-p7",
        "the asymptotic chi/sigma ratio bound at p = 7",
        "Kirk-Livingston, Theorem 6.1 (<= 13/28)",
        "13/28",
        Ok(p_ratio_bound(7).to_string()),
    );

    push(
        "ratio-p5",
        "the asymptotic chi/sigma ratio bound at p = 5",
        "Kirk-Livingston, Section 6.2 (the minimum among primes occurs at p = 5 or p = 7)",
        "7/15",
        Ok(p_ratio_bound(5).to_string()),
    );

    push(
        "ratio-min",
        "the minimizing prime below 50",
        "Kirk-Livingston, Section 6.2 (the minimum is attained at p = 7)",
        "p 7, ratio 13/28",
        (|| {
            let (p, r) = minimize_p_ratio(50)
                .ok_or_else(|| Error::Internal("empty prime range".into()))?;
            Ok(format!("p {p}, ratio {r}"))
        })(),
    );

    push(
        "search-14H",
        "decomposable-sums search, coefficient bound 1: a signature-0 hit",
        "Kirk-Livingston, Section 5.1 Example (the pairing is equivalent to 14H or E8+10H)",
        "14H",
        (|| {
            let out = run_search(&SearchSpec::default(), None)?;
            let hit = out
                .hits
                .iter()
                .find(|h| h.invariants.signature == 0)
                .ok_or_else(|| Error::Regression("no signature-0 hit".into()))?;
            crate::search::verify_hit(hit)?;
            Ok(hit.classification.to_string())
        })(),
    );

    push(
        "f-sample-z6",
        "the support-style sample f(t) = min(q(sigma) + t sigma) for Z^6 at t = 0, 1/2",
        "Kirk-Livingston, Section 6.3 (piecewise-linear minimum of the q-cone)",
        "6, 5",
        (|| {
            let qf = assemble(&builtin_profile("zn=6")?, 16)?;
            let f0 = crate::geography::f_sample(&qf, &BigRational::from_integer(0.into()))?;
            let fh = crate::geography::f_sample(
                &qf,
                &BigRational::new(BigInt::one(), BigInt::from(2)),
            )?;
            Ok(format!("{f0}, {fh}"))
        })(),
    );

    rows
}

fn describe_form(inv: &FormInvariants) -> String {
    format!(
        "rank {}, sigma {}, {}, {}",
        inv.rank,
        inv.signature,
        match inv.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        },
        if inv.unimodular { "unimodular" } else { "not unimodular" }
    )
}

fn describe_resolution(r: &Resolution) -> String {
    match r {
        Resolution::Exact(v) => format!("exact {v}"),
        Resolution::Interval(lo, Some(up)) => format!("[{lo}, {up}]"),
        Resolution::Interval(lo, None) => format!("[{lo}, -)"),
    }
}

fn describe_recipe(name: &str) -> Result<String> {
    let b = crate::constructions::evaluate(&named_recipe(name)?)?;
    Ok(format!("chi {}, sigma {}", b.chi, b.sigma))
}

fn sum_hyperbolic(copies: usize) -> SymIntForm {
    let mut f = SymIntForm::hyperbolic();
    for _ in 1..copies {
        f = f.direct_sum(&SymIntForm::hyperbolic());
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_rows_pass() {
        let rows = run_tables();
        for r in &rows {
            assert!(r.ok(), "{}: expected `{}`, got `{}`", r.id, r.expected, r.actual);
        }
        assert!(rows.len() >= 25);
    }

    #[test]
    fn render_reports_failures() {
        let rows = vec![TableRow {
            id: "x",
            description: "d",
            expected: "1".into(),
            actual: "2".into(),
            citation: "c",
        }];
        let text = render(&rows);
        assert!(text.contains("FAIL"));
        assert!(text.contains("1 failed"));
    }
}
