//! Realization calculus: (beta1, chi, sigma, beta2) bookkeeping for the
//! building blocks and moves used to construct closed 4-manifolds with
//! prescribed fundamental group — connected sums, circle surgeries (killing a
//! generator or a commutator), +-CP^2 and S^2xS^2 stabilizations, symmetric
//! products of surfaces, and the finite-projective-plane construction.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{Error, Result};

/// Invariant package of a closed oriented 4-manifold used by the calculus.
/// beta2 is derived: beta2 = chi - 2 + 2 beta1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub beta1: i64,
    pub chi: i64,
    pub sigma: i64,
}

impl Block {
    pub fn new(name: &str, beta1: i64, chi: i64, sigma: i64) -> Result<Block> {
        let b = Block { name: name.to_string(), beta1, chi, sigma };
        b.validate()?;
        Ok(b)
    }

    pub fn beta2(&self) -> i64 {
        self.chi - 2 + 2 * self.beta1
    }

    fn validate(&self) -> Result<()> {
        if self.beta1 < 0 {
            return Err(Error::Domain(format!("{}: beta1 negative", self.name)));
        }
        if self.beta2() < 0 {
            return Err(Error::Domain(format!("{}: beta2 negative", self.name)));
        }
        if (self.chi - self.sigma).rem_euclid(2) != 0 {
            return Err(Error::Domain(format!("{}: chi and sigma have different parity", self.name)));
        }
        if self.sigma.abs() > self.beta2() {
            return Err(Error::Domain(format!("{}: |sigma| exceeds beta2", self.name)));
        }
        Ok(())
    }

    /// Orientation reversal: negates the signature.
    pub fn reversed(&self) -> Block {
        Block {
            name: format!("-{}", self.name),
            beta1: self.beta1,
            chi: self.chi,
            sigma: -self.sigma,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: beta1={} beta2={} chi={} sigma={}",
            self.name,
            self.beta1,
            self.beta2(),
            self.chi,
            self.sigma
        )
    }
}

/// A named elementary block, by its conventional label.
pub fn basic_block(name: &str) -> Result<Block> {
    match name {
        "s4" => Block::new("S^4", 0, 2, 0),
        "s1xs3" => Block::new("S^1xS^3", 1, 0, 0),
        "t2xs2" => Block::new("T^2xS^2", 2, 0, 0),
        "t4" => Block::new("T^4", 4, 0, 0),
        "f2xf1" => Block::new("F_2xT^2", 6, 0, 0),
        "s2xs2" => Block::new("S^2xS^2", 0, 4, 0),
        "cp2" => Block::new("CP^2", 0, 3, 1),
        "s6" => sym_product(3),
        _ => Err(Error::Domain(format!("unknown block `{name}`"))),
    }
}

/// The 2k-fold symmetric product of a genus-k surface: beta1 = 2k,
/// chi = 2k^2 - 5k + 3, sigma = 1 - k.
pub fn sym_product(k: i64) -> Result<Block> {
    if k < 1 {
        return Err(Error::Domain(format!("symmetric product needs genus >= 1, got {k}")));
    }
    Block::new(&format!("S_{}", 2 * k), 2 * k, 2 * k * k - 5 * k + 3, 1 - k)
}

/// One step of a construction recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Block(String),
    Sum,
    KillGenerator(u32),
    KillCommutator(u32),
    AddCp2 { positive: bool, count: u32 },
    AddS2xS2(u32),
}

/// An ordered construction recipe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub steps: Vec<Step>,
}

impl Recipe {
    /// Parse the one-step-per-line text format: `block <name>`, `sum`,
    /// `kill-gen <count>`, `kill-comm <count>`, `cp2 +|- <count>`,
    /// `s2xs2 <count>`.
    pub fn from_text(text: &str) -> Result<Recipe> {
        let mut steps = Vec::new();
        for (lno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let word = it.next().unwrap();
            let parse_count = |tok: Option<&str>| -> Result<u32> {
                tok.and_then(|t| t.parse().ok()).ok_or_else(|| Error::Parse {
                    line: lno + 1,
                    msg: format!("`{word}` needs a count"),
                })
            };
            let step = match word {
                "block" => Step::Block(
                    it.next()
                        .ok_or_else(|| Error::Parse {
                            line: lno + 1,
                            msg: "`block` needs a name".into(),
                        })?
                        .to_string(),
                ),
                "sum" => Step::Sum,
                "kill-gen" => Step::KillGenerator(parse_count(it.next())?),
                "kill-comm" => Step::KillCommutator(parse_count(it.next())?),
                "cp2" => {
                    let sign = it.next().ok_or_else(|| Error::Parse {
                        line: lno + 1,
                        msg: "`cp2` needs +|- and a count".into(),
                    })?;
                    let positive = match sign {
                        "+" => true,
                        "-" => false,
                        other => {
                            return Err(Error::Parse {
                                line: lno + 1,
                                msg: format!("expected + or -, got `{other}`"),
                            })
                        }
                    };
                    Step::AddCp2 { positive, count: parse_count(it.next())? }
                }
                "s2xs2" => Step::AddS2xS2(parse_count(it.next())?),
                other => {
                    return Err(Error::Parse {
                        line: lno + 1,
                        msg: format!("unknown step `{other}`"),
                    })
                }
            };
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: lno + 1,
                    msg: format!("trailing tokens after `{word}`"),
                });
            }
            steps.push(step);
        }
        if steps.is_empty() {
            return Err(Error::Parse { line: 1, msg: "empty recipe".into() });
        }
        Ok(Recipe { steps })
    }
}

/// Connected sum of blocks: chi = sum chi - 2(m-1), sigma and beta1 add.
fn connected_sum(blocks: &[Block]) -> Result<Block> {
    if blocks.is_empty() {
        return Err(Error::Domain("connected sum of nothing".into()));
    }
    let m = blocks.len() as i64;
    let name = blocks.iter().map(|b| b.name.as_str()).collect::<Vec<_>>().join(" # ");
    Block::new(
        &name,
        blocks.iter().map(|b| b.beta1).sum(),
        blocks.iter().map(|b| b.chi).sum::<i64>() - 2 * (m - 1),
        blocks.iter().map(|b| b.sigma).sum(),
    )
}

/// Evaluate a recipe to its resulting block.
pub fn evaluate(recipe: &Recipe) -> Result<Block> {
    let mut stack: Vec<Block> = Vec::new();
    let single = |stack: &mut Vec<Block>, step: &str| -> Result<Block> {
        if stack.len() != 1 {
            return Err(Error::Domain(format!(
                "`{step}` needs exactly one block on the stack (use `sum` first), found {}",
                stack.len()
            )));
        }
        Ok(stack.pop().unwrap())
    };
    for step in &recipe.steps {
        match step {
            Step::Block(name) => stack.push(basic_block(name)?),
            Step::Sum => {
                let merged = connected_sum(&stack)?;
                stack.clear();
                stack.push(merged);
            }
            Step::KillGenerator(count) => {
                let mut b = single(&mut stack, "kill-gen")?;
                // Each surgery along a generator circle: chi += 2, beta1 -= 1,
                // beta2 unchanged, sigma unchanged.
                b.beta1 -= i64::from(*count);
                b.chi += 2 * i64::from(*count);
                b.validate()?;
                stack.push(b);
            }
            Step::KillCommutator(count) => {
                let mut b = single(&mut stack, "kill-comm")?;
                // Each surgery along a commutator circle: chi += 2, beta1 and
                // sigma unchanged (so beta2 += 2).
                b.chi += 2 * i64::from(*count);
                b.validate()?;
                stack.push(b);
            }
            Step::AddCp2 { positive, count } => {
                let mut b = single(&mut stack, "cp2")?;
                b.chi += i64::from(*count);
                b.sigma += if *positive { i64::from(*count) } else { -i64::from(*count) };
                b.validate()?;
                stack.push(b);
            }
            Step::AddS2xS2(count) => {
                let mut b = single(&mut stack, "s2xs2")?;
                b.chi += 2 * i64::from(*count);
                b.validate()?;
                stack.push(b);
            }
        }
    }
    let out = single(&mut stack, "result")?;
    Ok(out)
}

/// The named recipes used by the geography tables, transcribed step by step.
pub fn named_recipe(name: &str) -> Result<Recipe> {
    let text = match name {
        // pi_1 = Z^4, alpha = k[T] with |k| > 1: (sigma, chi) = (0, 6).
        "z4_kbig" => "block t4\nblock s1xs3\nsum\nkill-gen 1\nkill-comm 3\n",
        // pi_1 = Z^5, alpha = 0: (0, 12).
        "z5_k0" => "block t4\nblock t2xs2\nsum\nkill-gen 1\nkill-comm 6\n",
        // pi_1 = Z^5, alpha primitive: (0, 6).
        "z5_k1" => "block t4\nblock t2xs2\nsum\nkill-gen 1\nkill-comm 3\n",
        // pi_1 = Z^5, alpha = k x1 with |k| > 1: (0, 12).
        "z5_kbig" => "block t4\nblock t2xs2\nsum\nkill-gen 1\nkill-comm 6\n",
        // pi_1 = Z^6, any (a,b,c): (0, 20).
        "z6_general" => "block f2xf1\nblock t4\nsum\nkill-gen 4\nkill-comm 7\n",
        // pi_1 = Z^6, (1,b,c): (0, 14).
        "z6_1bc" => "block f2xf1\nblock t4\nsum\nkill-gen 4\nkill-comm 4\n",
        // pi_1 = Z^6, (1,1,c): (0, 10).
        "z6_110" => "block f2xf1\nblock t4\nsum\nkill-gen 4\nkill-comm 2\n",
        // pi_1 = Z^6, (1,1,1): (0, 6).
        "z6_111" => "block f2xf1\nblock t4\nsum\nkill-gen 4\n",
        // pi_1 = Z^6, (a,0,0): (0, 14).
        "z6_100" => "block t4\nblock s1xs3\nblock s1xs3\nsum\nkill-comm 9\n",
        _ => return Err(Error::Domain(format!("unknown recipe `{name}`"))),
    };
    Recipe::from_text(text)
}

/// Point and line counts of the projective k-space over a field of order p:
/// n = (p^{k+1} - 1)/(p - 1) points and
/// L = (p^{k+1} - 1)(p^k - 1)/((p + 1)(p - 1)^2) lines.
pub fn projective_counts(p: u64, k: u32) -> Result<(BigInt, BigInt)> {
    if p < 2 || k < 1 {
        return Err(Error::Domain(format!("projective counts need p >= 2, k >= 1, got ({p},{k})")));
    }
    let pb = BigInt::from(p);
    let pk1 = pb.pow(k + 1);
    let pk = pb.pow(k);
    let one = BigInt::from(1);
    let n = (&pk1 - &one) / (&pb - &one);
    let num = (&pk1 - &one) * (&pk - &one);
    let den = (&pb + &one) * (&pb - &one) * (&pb - &one);
    if !(&num % &den).is_zero() {
        return Err(Error::Internal(format!("line count not integral for ({p},{k})")));
    }
    Ok((n, num / den))
}

use num_traits::{ToPrimitive, Zero};

/// Plan for the projective-plane construction: one copy of X for each line of
/// P^k over F_p, glued along the point-generators.
#[derive(Debug, Clone)]
pub struct ProjectivePlan {
    pub p: u64,
    pub k: u32,
    pub x: Block,
}

/// Evaluate the plan both by the closed formula
/// (beta1, sigma, beta2, chi) = (n, L sigma(X), L beta2(X), 2 - 2n + L beta2(X))
/// and by surgery replay (connected sum of L copies of X followed by
/// L(p+1) - n generator-identifying surgeries); the two must agree.
pub fn projective_construction(plan: &ProjectivePlan) -> Result<Block> {
    if plan.x.beta1 != plan.p as i64 + 1 {
        return Err(Error::Domain(format!(
            "plan block {} has beta1 = {}, need p + 1 = {}",
            plan.x.name,
            plan.x.beta1,
            plan.p + 1
        )));
    }
    let (n, l) = projective_counts(plan.p, plan.k)?;
    let n = n.to_i64().ok_or_else(|| Error::Domain("point count overflows i64".into()))?;
    let l = l.to_i64().ok_or_else(|| Error::Domain("line count overflows i64".into()))?;
    let name = format!("W({},{};{})", plan.p, plan.k, plan.x.name);
    let formula = Block::new(
        &name,
        n,
        2 - 2 * n + l * plan.x.beta2(),
        l * plan.x.sigma,
    )?;
    // Surgery replay.
    let copies: Vec<Block> = (0..l).map(|_| plan.x.clone()).collect();
    let mut replay = connected_sum(&copies)?;
    let kills = l * (plan.p as i64 + 1) - n;
    if kills < 0 {
        return Err(Error::Internal("negative surgery count in projective replay".into()));
    }
    replay.beta1 -= kills;
    replay.chi += 2 * kills;
    replay.validate()?;
    if (replay.beta1, replay.chi, replay.sigma) != (formula.beta1, formula.chi, formula.sigma) {
        return Err(Error::Internal(format!(
            "projective replay ({}, {}, {}) disagrees with formula ({}, {}, {})",
            replay.beta1, replay.chi, replay.sigma, formula.beta1, formula.chi, formula.sigma
        )));
    }
    Ok(formula)
}

/// The exact ratio (beta2(W) - sigma(W)) / (2 n^2) asymptotics of the
/// projective construction: (p^2 + 3)/(2(p^2 + p)).
pub fn p_ratio_bound(p: u64) -> BigRational {
    let p = BigInt::from(p);
    BigRational::new(&p * &p + 3, 2 * (&p * &p + &p))
}

/// Minimize `p_ratio_bound` over primes up to `limit`.
pub fn minimize_p_ratio(limit: u64) -> Option<(u64, BigRational)> {
    let mut best: Option<(u64, BigRational)> = None;
    for p in 2..=limit {
        if !crate::forms::is_prime_u64(p) {
            continue;
        }
        let v = p_ratio_bound(p);
        match &best {
            Some((_, bv)) if *bv <= v => {}
            _ => best = Some((p, v)),
        }
    }
    best
}
