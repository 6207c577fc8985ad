//! Lower-bound engine and q-function bookkeeping: evaluate every applicable
//! lower-bound rule for a group profile, combine the bounds with realized
//! construction points into exact-or-interval q(sigma) tables, and derive
//! q(G), p(G), minimum points, cone decompositions, and f_G(t).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::classes::canonical_omega_6;
use crate::constructions;
use crate::exterior::binomial;
use crate::forms::{rational_isotropic_dim, witt_isotropic_dim_mod_p, FormInvariants, SymIntForm};
use crate::{Error, Result};

/// Position of the characteristic class alpha in H_2(G)/torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaKind {
    Zero,
    Torsion,
    Multiple(Vec<u64>),
    Primitive,
    General,
}

/// A construction output (sigma, chi) with the recipe or manifold that
/// realizes it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedPoint {
    pub sigma: i64,
    pub chi: i64,
    pub label: String,
}

/// Everything the bound engine needs to know about a group (and a choice of
/// alpha): Betti numbers, deficiency, L^2 vanishing, the alpha position,
/// optional mod-p cohomology dimensions, and an optional pairing form.
#[derive(Debug, Clone)]
pub struct GroupProfile {
    pub name: String,
    pub beta1: i64,
    pub beta2: i64,
    pub deficiency: Option<i64>,
    pub l2_b1_vanishes: bool,
    pub alpha_kind: AlphaKind,
    /// dim H^1(G; Z/p), dim H^2(G; Z/p) per prime.
    pub modp_dims: BTreeMap<u64, (i64, i64)>,
    /// Pairing form of a chosen class, with its ambient dimension.
    pub pairing: Option<SymIntForm>,
    /// Primes p for which the mod-p reduction of the pairing constrains the
    /// intersection form (p dividing the relevant coefficients).
    pub pairing_primes: Vec<u64>,
    /// Set for Z^n profiles; enables the even-unimodular parity bump.
    pub zn: Option<u8>,
    /// A universally isotropic subspace dimension m: beta2 >= 2m + |sigma|.
    pub universal_isotropic: Option<i64>,
    /// Extra chi >= c + |sigma| rules with their names.
    pub custom_sigma_rules: Vec<(String, i64)>,
    /// Construction outputs realizing points of the geography.
    pub realized: Vec<RealizedPoint>,
    /// Inclusive sigma ranges where equality is not settled by a table (used
    /// to flag engine-resolved rows as derived sharpenings).
    pub open_ranges: Vec<(i64, i64)>,
}

impl GroupProfile {
    fn base(name: &str, beta1: i64, beta2: i64) -> GroupProfile {
        GroupProfile {
            name: name.to_string(),
            beta1,
            beta2,
            deficiency: None,
            l2_b1_vanishes: false,
            alpha_kind: AlphaKind::General,
            modp_dims: BTreeMap::new(),
            pairing: None,
            pairing_primes: Vec::new(),
            zn: None,
            universal_isotropic: None,
            custom_sigma_rules: Vec::new(),
            realized: Vec::new(),
            open_ranges: Vec::new(),
        }
    }

    fn realize(&mut self, sigma: i64, chi: i64, label: &str) {
        self.realized.push(RealizedPoint { sigma, chi, label: label.to_string() });
    }

    fn realize_recipe(&mut self, recipe_name: &str) -> Result<()> {
        let block = constructions::evaluate(&constructions::named_recipe(recipe_name)?)?;
        if block.beta1 != self.beta1 {
            return Err(Error::Internal(format!(
                "recipe {recipe_name} yields beta1 = {}, profile {} has beta1 = {}",
                block.beta1, self.name, self.beta1
            )));
        }
        self.realize(block.sigma, block.chi, &format!("recipe:{recipe_name}"));
        Ok(())
    }
}

/// Minimal beta2 compatible with signature `sigma`, the rational restrictions
/// b+- >= b+-(phi), and an isotropic subspace of dimension m = the rational
/// isotropic dimension of phi: minimize b+ + b- subject to b+ - b- = sigma,
/// b+ >= max(b+(phi), m), b- >= max(b-(phi), m).
pub fn min_beta2(inv: &FormInvariants, ambient_dim: usize, sigma: i64) -> i64 {
    let m = rational_isotropic_dim(inv, ambient_dim) as i64;
    let bp_floor = (inv.b_plus as i64).max(m);
    let bm_floor = (inv.b_minus as i64).max(m);
    let b_plus = bp_floor.max(bm_floor + sigma);
    let b_minus = b_plus - sigma;
    b_plus + b_minus
}

/// One evaluated lower-bound candidate.
#[derive(Debug, Clone)]
struct Candidate {
    rule: &'static str,
    chi: i64,
    /// The implied beta2 bound, for rules that constrain beta2 directly
    /// (used by the even-unimodular parity bump).
    beta2: Option<i64>,
}

/// The lower bound chi >= lower(sigma) together with the name of the rule
/// achieving it, rounded up to the parity of sigma.
pub fn lower_bound(profile: &GroupProfile, sigma: i64) -> Result<(i64, String)> {
    let b1 = profile.beta1;
    let chi_of_beta2 = |b2: i64| 2 - 2 * b1 + b2;
    let mut cands: Vec<Candidate> = Vec::new();

    // Half-plane bound: chi >= |sigma| + 2 - 2 beta1.
    cands.push(Candidate {
        rule: "halfplane",
        chi: sigma.abs() + 2 - 2 * b1,
        beta2: Some(sigma.abs()),
    });
    // Betti bound: beta2(M) >= beta2(G).
    cands.push(Candidate {
        rule: "betti",
        chi: chi_of_beta2(profile.beta2),
        beta2: Some(profile.beta2),
    });
    // Torsion/zero alpha: chi >= |sigma| + 2 - 2 beta1 + 2 beta2(G).
    if matches!(profile.alpha_kind, AlphaKind::Zero | AlphaKind::Torsion) {
        cands.push(Candidate {
            rule: "torsion",
            chi: sigma.abs() + 2 - 2 * b1 + 2 * profile.beta2,
            beta2: Some(sigma.abs() + 2 * profile.beta2),
        });
    }
    // Alpha a multiple of p: chi >= 2 - 2 h^1 + 2 h^2 over Z/p.
    if let AlphaKind::Multiple(primes) = &profile.alpha_kind {
        for p in primes {
            let (h1, h2) = profile.modp_dims.get(p).ok_or_else(|| {
                Error::Config(format!(
                    "profile {} declares alpha as a multiple of {p} but no mod-{p} dimensions",
                    profile.name
                ))
            })?;
            cands.push(Candidate { rule: "mod-p", chi: 2 - 2 * h1 + 2 * h2, beta2: None });
        }
    }
    // L^2 bound for groups with vanishing first L^2 Betti number.
    if profile.l2_b1_vanishes {
        cands.push(Candidate { rule: "l2", chi: sigma.abs(), beta2: Some(sigma.abs() + 2 * b1 - 2) });
    }
    // Pairing restrictions.
    if let Some(phi) = &profile.pairing {
        let inv = phi.invariants();
        let b2 = min_beta2(&inv, phi.dim, sigma);
        cands.push(Candidate { rule: "pairing-b+-", chi: chi_of_beta2(b2), beta2: Some(b2) });
        for &p in &profile.pairing_primes {
            let w = witt_isotropic_dim_mod_p(phi, p)? as i64;
            cands.push(Candidate {
                rule: "pairing-mod-p",
                chi: chi_of_beta2(2 * w),
                beta2: Some(2 * w),
            });
        }
    }
    // Universal isotropic subspace: beta2 >= 2m + |sigma|.
    if let Some(m) = profile.universal_isotropic {
        let b2 = 2 * m + sigma.abs();
        cands.push(Candidate { rule: "isotropic", chi: chi_of_beta2(b2), beta2: Some(b2) });
    }
    for (name, c) in &profile.custom_sigma_rules {
        cands.push(Candidate {
            rule: Box::leak(name.clone().into_boxed_str()),
            chi: c + sigma.abs(),
            beta2: None,
        });
    }

    // Even-unimodular parity bump for Z^n: if the best beta2 bound equals
    // beta2(G) = C(n,2) exactly, a manifold attaining it would have an even
    // unimodular intersection form, impossible in odd rank.
    if let Some(n) = profile.zn {
        let cn2 = binomial(usize::from(n), 2) as i64;
        let best_b2 = cands.iter().filter_map(|c| c.beta2).max().unwrap_or(0);
        if best_b2 == cn2 && cn2 % 2 != 0 {
            cands.push(Candidate { rule: "evenness", chi: chi_of_beta2(cn2 + 1), beta2: Some(cn2 + 1) });
        }
    }

    let best = cands
        .iter()
        .max_by_key(|c| (c.chi, std::cmp::Reverse(c.rule)))
        .expect("at least one rule");
    let mut chi = best.chi;
    let mut rule = best.rule.to_string();
    // Round up to the parity of sigma.
    if (chi - sigma).rem_euclid(2) != 0 {
        chi += 1;
        rule = format!("{rule}+parity");
    }
    Ok((chi, rule))
}

/// Resolution of q(sigma): an exact value or an interval [lower, upper]
/// (upper = None when no construction bounds it above).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    Exact(i64),
    Interval(i64, Option<i64>),
}

impl Resolution {
    pub fn lower(&self) -> i64 {
        match self {
            Resolution::Exact(v) => *v,
            Resolution::Interval(lo, _) => *lo,
        }
    }

    pub fn exact_value(&self) -> Option<i64> {
        match self {
            Resolution::Exact(v) => Some(*v),
            Resolution::Interval(..) => None,
        }
    }
}

/// One row of an assembled q-table.
#[derive(Debug, Clone)]
pub struct QRow {
    pub sigma: i64,
    pub resolution: Resolution,
    pub rule: String,
    pub witness: Option<String>,
    /// True when the engine resolves a value the source tables leave open.
    pub derived: bool,
}

/// The assembled q-function on a symmetric window.
#[derive(Debug, Clone)]
pub struct QFunction {
    pub profile_name: String,
    pub window: i64,
    pub rows: BTreeMap<i64, QRow>,
}

/// Assemble the q-function on sigma in [-window, window]: the lower bound at
/// each sigma, the cone closure of the realized points from above, exact
/// where they meet.
pub fn assemble(profile: &GroupProfile, window: i64) -> Result<QFunction> {
    if window < 0 {
        return Err(Error::Domain("window must be nonnegative".into()));
    }
    // Realized points must dominate the bound at their own sigma.
    for r in &profile.realized {
        let (lo, _) = lower_bound(profile, r.sigma)?;
        if r.chi < lo {
            return Err(Error::Contradiction(format!(
                "realized point ({}, {}) [{}] lies below the proved bound {} for {}",
                r.sigma, r.chi, r.label, lo, profile.name
            )));
        }
        if (r.chi - r.sigma).rem_euclid(2) != 0 {
            return Err(Error::Contradiction(format!(
                "realized point ({}, {}) [{}] violates chi = sigma mod 2",
                r.sigma, r.chi, r.label
            )));
        }
    }
    let mut rows = BTreeMap::new();
    for sigma in -window..=window {
        let (lo, rule) = lower_bound(profile, sigma)?;
        // Cone closure: from an apex (a, q) every (sigma, q + |sigma - a| + 2t)
        // is realized by stabilization.
        let best = profile
            .realized
            .iter()
            .map(|r| (r.chi + (sigma - r.sigma).abs(), &r.label))
            .min();
        let (resolution, witness) = match best {
            Some((up, label)) => {
                if up < lo {
                    return Err(Error::Contradiction(format!(
                        "cone of realized points gives chi = {up} below the bound {lo} at sigma = {sigma} for {}",
                        profile.name
                    )));
                }
                if up == lo {
                    (Resolution::Exact(lo), Some(label.clone()))
                } else {
                    (Resolution::Interval(lo, Some(up)), Some(label.clone()))
                }
            }
            None => (Resolution::Interval(lo, None), None),
        };
        let derived = matches!(resolution, Resolution::Exact(_))
            && profile.open_ranges.iter().any(|&(a, b)| sigma >= a && sigma <= b);
        rows.insert(sigma, QRow { sigma, resolution, rule, witness, derived });
    }
    Ok(QFunction { profile_name: profile.name.clone(), window, rows })
}

impl QFunction {
    pub fn row(&self, sigma: i64) -> Result<&QRow> {
        self.rows
            .get(&sigma)
            .ok_or_else(|| Error::Domain(format!("sigma = {sigma} outside window {}", self.window)))
    }

    /// q with alpha replaced by -alpha: reflect sigma.
    pub fn mirror(&self) -> QFunction {
        let rows = self
            .rows
            .iter()
            .map(|(s, r)| {
                let sigma = -s;
                (sigma, QRow { sigma, ..r.clone() })
            })
            .collect();
        QFunction {
            profile_name: format!("{} (mirrored)", self.profile_name),
            window: self.window,
            rows,
        }
    }

    /// TSV rows: sigma, lower, upper, exact?, active-rule, witness-recipe.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("sigma\tlower\tupper\texact?\trule\twitness\n");
        for row in self.rows.values() {
            let (lo, up, tag) = match &row.resolution {
                Resolution::Exact(v) => {
                    (v.to_string(), v.to_string(), if row.derived { "derived" } else { "exact" })
                }
                Resolution::Interval(lo, up) => (
                    lo.to_string(),
                    up.map_or_else(|| "-".to_string(), |u| u.to_string()),
                    "interval",
                ),
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                row.sigma,
                lo,
                up,
                tag,
                row.rule,
                row.witness.as_deref().unwrap_or("-")
            ));
        }
        out
    }
}

/// Cones with apexes at the minimum points: (sigma, chi) belongs to the
/// geography iff chi = sigma mod 2 and chi >= q + |sigma - a| for some apex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSet {
    pub apexes: Vec<(i64, i64)>,
}

impl ConeSet {
    pub fn contains(&self, sigma: i64, chi: i64) -> bool {
        (chi - sigma).rem_euclid(2) == 0
            && self.apexes.iter().any(|&(a, q)| chi >= q + (sigma - a).abs())
    }
}

/// Summary invariants derived from a stabilized q-function.
#[derive(Debug, Clone)]
pub struct DerivedInvariants {
    /// min over sigma of q(sigma).
    pub q_group: i64,
    /// Whether the minimum is attained at an exactly resolved sigma.
    pub q_group_exact: bool,
    /// The stabilized offset: q(sigma) = sigma + p for large sigma.
    pub p_group: i64,
    /// Sigmas where q(sigma +- 1) = q(sigma) + 1.
    pub minimum_points: Vec<i64>,
    pub cones: ConeSet,
}

const STABLE_STRETCH: i64 = 8;

/// Derive q(G), p(G), minimum points and the cone decomposition. Requires the
/// window tails to be exactly resolved and linear (q -+ sigma constant on the
/// last `STABLE_STRETCH` values at each end); otherwise reports the window as
/// too small.
pub fn derived_invariants(qf: &QFunction) -> Result<DerivedInvariants> {
    let w = qf.window;
    if w < STABLE_STRETCH {
        return Err(Error::Domain(format!(
            "window {w} too small: need at least {STABLE_STRETCH} (extend the window)"
        )));
    }
    let exact = |s: i64| -> Result<i64> {
        qf.row(s)?.resolution.exact_value().ok_or_else(|| {
            Error::Domain(format!(
                "window too small: q({s}) unresolved for {} (extend the window or add constructions)",
                qf.profile_name
            ))
        })
    };
    // Right tail: q(sigma) - sigma constant; left tail: q(sigma) + sigma.
    let p_right = exact(w)? - w;
    for s in (w - STABLE_STRETCH + 1)..=w {
        if exact(s)? - s != p_right {
            return Err(Error::Domain(format!(
                "window too small: q - sigma not stabilized at sigma = {s} (extend the window)"
            )));
        }
    }
    let p_left = exact(-w)? - w;
    for s in -w..=(-w + STABLE_STRETCH - 1) {
        if exact(s)? + s != p_left {
            return Err(Error::Domain(format!(
                "window too small: q + sigma not stabilized at sigma = {s} (extend the window)"
            )));
        }
    }
    let q_group = qf.rows.values().map(|r| r.resolution.lower()).min().expect("nonempty window");
    let q_group_exact = qf
        .rows
        .values()
        .any(|r| r.resolution.exact_value() == Some(q_group));
    let mut minimum_points = Vec::new();
    for s in (-w + 1)..w {
        let (a, b, c) = (
            qf.row(s - 1)?.resolution.exact_value(),
            qf.row(s)?.resolution.exact_value(),
            qf.row(s + 1)?.resolution.exact_value(),
        );
        if let (Some(a), Some(b), Some(c)) = (a, b, c) {
            if a == b + 1 && c == b + 1 {
                minimum_points.push(s);
            }
        }
    }
    let apexes = minimum_points
        .iter()
        .map(|&s| Ok((s, exact(s)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DerivedInvariants {
        q_group,
        q_group_exact,
        p_group: p_right,
        minimum_points,
        cones: ConeSet { apexes },
    })
}

/// f(t) = min over the window of q(sigma) + t sigma, for rational t in
/// [-1, 1]. Requires every row in the window to be exactly resolved.
pub fn f_sample(qf: &QFunction, t: &BigRational) -> Result<BigRational> {
    let one = BigRational::from(BigInt::from(1));
    if t < &-one.clone() || t > &one {
        return Err(Error::Domain("f(t) is -infinity outside [-1, 1]".into()));
    }
    let mut best: Option<BigRational> = None;
    for row in qf.rows.values() {
        let q = row.resolution.exact_value().ok_or_else(|| {
            Error::Domain(format!("f(t) needs exact resolution; q({}) is an interval", row.sigma))
        })?;
        let v = BigRational::from(BigInt::from(q)) + t * BigRational::from(BigInt::from(row.sigma));
        match &best {
            Some(b) if *b <= v => {}
            _ => best = Some(v),
        }
    }
    best.ok_or_else(|| Error::Domain("empty window".into()))
}

/// The universal isotropic dimension for Z^n: an (n-1)-dimensional isotropic
/// subspace exists for every class, and for n >= 5 projection to Z^5 supplies
/// a 7-dimensional one.
fn zn_universal_isotropic(n: u8) -> i64 {
    let base = i64::from(n) - 1;
    if n >= 5 {
        base.max(7)
    } else {
        base
    }
}

fn prime_factors(mut v: i64) -> Vec<u64> {
    let mut out = Vec::new();
    v = v.abs();
    let mut d = 2i64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d as u64);
            while v % d == 0 {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v as u64);
    }
    out
}

fn zn_base(n: u8) -> GroupProfile {
    let b2 = binomial(usize::from(n), 2) as i64;
    let mut p = GroupProfile::base(&format!("Z^{n}"), i64::from(n), b2);
    p.zn = Some(n);
    p.l2_b1_vanishes = n >= 1;
    if n >= 1 {
        p.universal_isotropic = Some(zn_universal_isotropic(n));
    }
    p
}

/// The chi value of Z^n at sigma = 0 predicted by the general formula
/// 2 - 2n + C(n,2) + (1 if C(n,2) is odd).
fn zn_sigma0_chi(n: u8) -> i64 {
    let c = binomial(usize::from(n), 2) as i64;
    2 - 2 * i64::from(n) + c + c % 2
}

/// Build a built-in profile from a shorthand tag:
/// `trivial`, `free_n=N`, `zn_N`, `z4_k=K`, `z5_k=K`, `z6_abc=a,b,c`,
/// `knot`, `surface_g=G`, `3manifold_n=N`.
pub fn builtin_profile(tag: &str) -> Result<GroupProfile> {
    let (head, arg) = match tag.split_once('=') {
        Some((h, a)) => (h, Some(a)),
        None => (tag, None),
    };
    let int_arg = |what: &str| -> Result<i64> {
        arg.and_then(|a| a.parse().ok())
            .ok_or_else(|| Error::Domain(format!("profile `{head}` needs `={what}`")))
    };
    match head {
        "trivial" => {
            let mut p = GroupProfile::base("trivial", 0, 0);
            p.alpha_kind = AlphaKind::Zero;
            p.deficiency = Some(0);
            p.realize(0, 2, "S^4");
            Ok(p)
        }
        "free_n" => {
            let n = int_arg("n")?;
            if n < 1 {
                return Err(Error::Domain("free_n needs n >= 1".into()));
            }
            let mut p = GroupProfile::base(&format!("F_{n}"), n, 0);
            p.alpha_kind = AlphaKind::Zero;
            p.deficiency = Some(n);
            p.realize(0, 2 - 2 * n, &format!("#{n} S^1xS^3"));
            Ok(p)
        }
        "knot" => {
            let mut p = GroupProfile::base("knot group", 1, 0);
            p.deficiency = Some(1);
            p.l2_b1_vanishes = true;
            p.realize(0, 0, "0-surgery cross S^1 surgered");
            Ok(p)
        }
        "surface_g" => {
            let g = int_arg("g")?;
            if g < 1 {
                return Err(Error::Domain("surface_g needs g >= 1".into()));
            }
            let mut p = GroupProfile::base(&format!("surface genus {g}"), 2 * g, 1);
            p.custom_sigma_rules.push(("surface".to_string(), 2 * (2 - 2 * g)));
            p.realize(0, 2 * (2 - 2 * g), "F_g x S^2");
            Ok(p)
        }
        "3manifold_n" => {
            let n = int_arg("n")?;
            if n < 0 {
                return Err(Error::Domain("3manifold_n needs n >= 0".into()));
            }
            let mut p = GroupProfile::base(&format!("3-manifold group, b1 = {n}"), n, 0);
            p.custom_sigma_rules.push(("3manifold".to_string(), 2 - 2 * n));
            p.realize(0, 2 - 2 * n, "N^3 x S^1 surgered");
            Ok(p)
        }
        "zn" => {
            let n: u8 = arg
                .and_then(|a| a.parse().ok())
                .ok_or_else(|| Error::Domain("zn needs `=n`".into()))?;
            if n == 0 {
                return builtin_profile("trivial");
            }
            if n > 12 {
                return Err(Error::NotImplemented(format!(
                    "Z^{n}: no realization data beyond n = 12"
                )));
            }
            let mut p = zn_base(n);
            match n {
                1 => p.realize(0, 0, "S^1xS^3"),
                2 => p.realize(0, 0, "T^2xS^2"),
                3 => {
                    // H_4 of a 3-complex vanishes, so alpha = 0 automatically.
                    p.alpha_kind = AlphaKind::Zero;
                    p.realize(0, 2, "T^3xS^1 surgered");
                }
                4 => p.realize(0, 0, "T^4"),
                5 => p.realize(0, 6, "recipe:z5_k1"),
                6 => {
                    p.realize(0, 6, "recipe:z6_111");
                    p.realize(-2, 6, "S_6");
                    p.realize(2, 6, "-S_6");
                }
                7 => {
                    p.realize(0, 10, "asserted minimum");
                    p.realize(-48, 50, "asserted tail point");
                    p.realize(48, 50, "asserted tail point");
                }
                _ => p.realize(0, zn_sigma0_chi(n), "asserted minimum"),
            }
            Ok(p)
        }
        "z4_k" => {
            let k = int_arg("k")?;
            let mut p = zn_base(4);
            p.name = format!("Z^4, alpha = {k}[T]");
            match k.abs() {
                0 => {
                    p.alpha_kind = AlphaKind::Zero;
                    // beta2 >= |sigma| + 12 via the torsion rule; realized at
                    // (0, 6)? No: alpha = 0 gives chi >= |sigma| + 2 - 8 + 12.
                    p.realize(0, 6, "recipe:z4_kbig");
                }
                1 => {
                    p.alpha_kind = AlphaKind::Primitive;
                    p.realize(0, 0, "T^4");
                }
                _ => {
                    let primes = prime_factors(k);
                    for &q in &primes {
                        p.modp_dims.insert(q, (4, 6));
                    }
                    p.alpha_kind = AlphaKind::Multiple(primes);
                    p.realize(0, 6, "recipe:z4_kbig");
                    p.open_ranges = vec![(i64::MIN / 2, -2), (2, i64::MAX / 2)];
                }
            }
            Ok(p)
        }
        "z5_k" => {
            let k = int_arg("k")?;
            let mut p = zn_base(5);
            p.name = format!("Z^5, alpha = {k} x1");
            match k.abs() {
                0 => {
                    p.alpha_kind = AlphaKind::Zero;
                    p.realize_recipe("z5_k0")?;
                }
                1 => {
                    p.alpha_kind = AlphaKind::Primitive;
                    p.realize_recipe("z5_k1")?;
                }
                _ => {
                    let primes = prime_factors(k);
                    for &q in &primes {
                        p.modp_dims.insert(q, (5, 10));
                    }
                    p.alpha_kind = AlphaKind::Multiple(primes);
                    p.realize_recipe("z5_kbig")?;
                    p.open_ranges = vec![(i64::MIN / 2, -2), (2, i64::MAX / 2)];
                }
            }
            Ok(p)
        }
        "z6_abc" => {
            let parts: Vec<i64> = arg
                .unwrap_or("")
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Domain("z6_abc needs `=a,b,c`".into()))?;
            if parts.len() != 3 {
                return Err(Error::Domain("z6_abc needs exactly three integers".into()));
            }
            let (a, b, c) = (parts[0], parts[1], parts[2]);
            if a < 0 || b < 0 {
                return Err(Error::Domain("normal form needs a, b >= 0".into()));
            }
            if (b != 0 && a != 0 && b % a != 0)
                || (c != 0 && b != 0 && c % b != 0)
                || (a == 0 && (b != 0 || c != 0))
                || (b == 0 && c != 0)
            {
                return Err(Error::Domain("z6_abc needs a | b | c".into()));
            }
            let mut p = zn_base(6);
            p.name = format!("Z^6, alpha = ({a},{b},{c})");
            p.pairing = Some(
                crate::classes::pairing_gram(&canonical_omega_6(
                    &BigInt::from(a),
                    &BigInt::from(b),
                    &BigInt::from(c),
                ))?
                .form,
            );
            if (a, b, c) == (0, 0, 0) {
                p.alpha_kind = AlphaKind::Zero;
                p.realize_recipe("z6_general")?;
            } else if a > 1 {
                let primes = prime_factors(a);
                for &q in &primes {
                    p.modp_dims.insert(q, (6, 15));
                }
                p.alpha_kind = AlphaKind::Multiple(primes);
                p.realize_recipe("z6_general")?;
                p.open_ranges = vec![(i64::MIN / 2, -2), (2, i64::MAX / 2)];
            } else if (b, c) == (0, 0) {
                // (1, 0, 0)
                p.alpha_kind = AlphaKind::Primitive;
                p.realize_recipe("z6_100")?;
            } else if b > 1 {
                p.pairing_primes = prime_factors(b);
                p.realize_recipe("z6_1bc")?;
                p.open_ranges = vec![(i64::MIN / 2, -2), (2, i64::MAX / 2)];
            } else if c == 0 {
                // (1, 1, 0)
                p.realize_recipe("z6_110")?;
            } else if c.abs() > 1 {
                p.pairing_primes = prime_factors(c);
                p.realize_recipe("z6_110")?;
                p.open_ranges = vec![(i64::MIN / 2, -2), (2, i64::MAX / 2)];
            } else {
                // (1, 1, +-1)
                p.realize_recipe("z6_111")?;
                if c == 1 {
                    p.realize(-2, 6, "S_6");
                    p.open_ranges = vec![(2, i64::MAX / 2)];
                } else {
                    p.realize(2, 6, "-S_6");
                    p.open_ranges = vec![(i64::MIN / 2, -2)];
                }
            }
            Ok(p)
        }
        other => Err(Error::Domain(format!("unknown profile `{other}`"))),
    }
}

/// Parse a profile from the key=value text format. Recognized keys:
/// `name`, `beta1`, `beta2`, `deficiency`, `l2_b1_vanishes`,
/// `alpha` (zero|torsion|multiple:p1,p2|primitive|general),
/// `modp` (p:h1:h2, repeatable), `zn` (n), `realized` (sigma,chi,label,
/// repeatable).
pub fn profile_from_text(text: &str) -> Result<GroupProfile> {
    let mut p = GroupProfile::base("unnamed", 0, 0);
    let mut saw_beta1 = false;
    for (lno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: lno + 1,
            msg: format!("expected key=value, got `{line}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |msg: String| Error::Parse { line: lno + 1, msg };
        match key {
            "name" => p.name = value.to_string(),
            "beta1" => {
                p.beta1 = value.parse().map_err(|_| bad(format!("bad beta1 `{value}`")))?;
                saw_beta1 = true;
            }
            "beta2" => p.beta2 = value.parse().map_err(|_| bad(format!("bad beta2 `{value}`")))?,
            "deficiency" => {
                p.deficiency =
                    Some(value.parse().map_err(|_| bad(format!("bad deficiency `{value}`")))?)
            }
            "l2_b1_vanishes" => {
                p.l2_b1_vanishes = match value {
                    "true" => true,
                    "false" => false,
                    _ => return Err(bad(format!("bad boolean `{value}`"))),
                }
            }
            "alpha" => {
                p.alpha_kind = if value == "zero" {
                    AlphaKind::Zero
                } else if value == "torsion" {
                    AlphaKind::Torsion
                } else if value == "primitive" {
                    AlphaKind::Primitive
                } else if value == "general" {
                    AlphaKind::General
                } else if let Some(list) = value.strip_prefix("multiple:") {
                    let primes = list
                        .split(',')
                        .map(|t| t.trim().parse::<u64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| bad(format!("bad prime list `{list}`")))?;
                    AlphaKind::Multiple(primes)
                } else {
                    return Err(bad(format!("bad alpha `{value}`")));
                }
            }
            "modp" => {
                let f: Vec<&str> = value.split(':').collect();
                if f.len() != 3 {
                    return Err(bad("modp needs p:h1:h2".into()));
                }
                let pr = f[0].parse().map_err(|_| bad(format!("bad prime `{}`", f[0])))?;
                let h1 = f[1].parse().map_err(|_| bad(format!("bad h1 `{}`", f[1])))?;
                let h2 = f[2].parse().map_err(|_| bad(format!("bad h2 `{}`", f[2])))?;
                p.modp_dims.insert(pr, (h1, h2));
            }
            "zn" => {
                let n: u8 = value.parse().map_err(|_| bad(format!("bad zn `{value}`")))?;
                let base = zn_base(n);
                p.zn = base.zn;
                p.l2_b1_vanishes = base.l2_b1_vanishes;
                p.universal_isotropic = base.universal_isotropic;
                if !saw_beta1 {
                    p.beta1 = base.beta1;
                    p.beta2 = base.beta2;
                }
            }
            "realized" => {
                let f: Vec<&str> = value.splitn(3, ',').collect();
                if f.len() < 2 {
                    return Err(bad("realized needs sigma,chi[,label]".into()));
                }
                let sigma =
                    f[0].trim().parse().map_err(|_| bad(format!("bad sigma `{}`", f[0])))?;
                let chi = f[1].trim().parse().map_err(|_| bad(format!("bad chi `{}`", f[1])))?;
                let label = f.get(2).map_or("supplied", |s| s.trim()).to_string();
                p.realized.push(RealizedPoint { sigma, chi, label });
            }
            other => return Err(bad(format!("unknown key `{other}`"))),
        }
    }
    if p.beta1 < 0 || p.beta2 < 0 {
        return Err(Error::Domain("beta1 and beta2 must be nonnegative".into()));
    }
    Ok(p)
}

/// Load a profile: a builtin shorthand tag, or a key=value file path.
pub fn load_profile(spec: &str) -> Result<GroupProfile> {
    match builtin_profile(spec) {
        Ok(p) => Ok(p),
        Err(Error::Domain(_)) if std::path::Path::new(spec).exists() => {
            profile_from_text(&std::fs::read_to_string(spec)?)
        }
        Err(e) => Err(e),
    }
}
