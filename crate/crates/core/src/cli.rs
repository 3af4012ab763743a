//! Batch commands over problem files with deterministic text output.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hyperreal::{rational, Hyperreal};
use crate::mixture::{Lottery, LotterySpace};
use crate::postulates::{
    check_a3_doubleprime, check_a3_prime, check_continuity_classical, check_independence_classical,
    check_qual_independence, check_weak_order, default_grid, Method, Postulate, PostulateReport,
    Witness, DEFAULT_DENOMINATOR_BOUND, DEFAULT_GRID,
};
use crate::preference::{
    compare_lotteries, expected_utility, maximin_model, maximin_oracle, overrides,
    PreferenceVerdict, UtilityModel,
};
use crate::problem::{parse_problem, ProblemFile, Query};
use crate::representation::{canonicalize, verify_equivalence};
use crate::subjective::{extract_probabilities, ActPreferenceOracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Compare,
    Rank,
    CheckPostulates,
    Canonicalize,
    Subjective,
    MaximinDemo,
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "compare" => Command::Compare,
            "rank" => Command::Rank,
            "check-postulates" => Command::CheckPostulates,
            "canonicalize" => Command::Canonicalize,
            "subjective" => Command::Subjective,
            "maximin-demo" => Command::MaximinDemo,
            _ => return Err(format!("unknown command '{s}'")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Grid weights are `k/grid` for `0 < k < grid`.
    pub grid: u32,
    pub denominator_bound: u32,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            grid: DEFAULT_GRID,
            denominator_bound: DEFAULT_DENOMINATOR_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn failed(exit_code: i32, message: impl std::fmt::Display) -> Self {
        CommandResult {
            exit_code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `text` and runs `command` on it.
pub fn run_text(command: Command, text: &str, options: &Options) -> CommandResult {
    match parse_problem(text) {
        Ok(problem) => run(command, &problem, options),
        Err(e) => CommandResult::failed(e.exit_code(), e),
    }
}

pub fn run(command: Command, problem: &ProblemFile, options: &Options) -> CommandResult {
    let out = match command {
        Command::Compare => compare(problem),
        Command::Rank => rank(problem),
        Command::CheckPostulates => check_postulates(problem, options),
        Command::Canonicalize => canonical(problem),
        Command::Subjective => subjective(problem),
        Command::MaximinDemo => maximin_demo(problem),
    };
    match out {
        Ok(stdout) => CommandResult::ok(stdout),
        Err(e) => CommandResult::failed(1, e),
    }
}

fn lottery(problem: &ProblemFile, name: &str) -> Result<Lottery> {
    problem
        .lottery(name)
        .ok_or_else(|| Error::UnknownOutcome(name.to_string()))
}

/// Declared lotteries, or the outcomes' point masses when none are declared.
fn named_lotteries(problem: &ProblemFile) -> Vec<(String, Lottery)> {
    if problem.lotteries().is_empty() {
        problem
            .outcomes()
            .iter()
            .map(|o| (o.id().to_string(), Lottery::point_mass(o.clone())))
            .collect()
    } else {
        problem.lotteries().to_vec()
    }
}

fn compare(problem: &ProblemFile) -> Result<String> {
    let m = problem.model()?;
    let mut out = String::new();
    for q in problem.queries() {
        if let Query::Compare(a, b) = q {
            let (a, b) = (lottery(problem, a)?, lottery(problem, b)?);
            let (ua, ub) = (expected_utility(&m, &a)?, expected_utility(&m, &b)?);
            let verdict: PreferenceVerdict = ua.qual_compare(&ub).into();
            writeln!(out, "{verdict}  EU1={ua}  EU2={ub}").unwrap();
        }
    }
    if out.is_empty() {
        return Err(Error::PreconditionViolated("no compare queries".into()));
    }
    Ok(out)
}

fn rank(problem: &ProblemFile) -> Result<String> {
    let m = problem.model()?;
    let mut items = named_lotteries(problem)
        .into_iter()
        .map(|(n, l)| Ok((n, expected_utility(&m, &l)?)))
        .collect::<Result<Vec<_>>>()?;
    if items.is_empty() {
        return Err(Error::PreconditionViolated("nothing to rank".into()));
    }
    // ≻ refines the reverse of the total order, so ∼-classes are contiguous
    items.sort_by(|a, b| b.1.cmp(&a.1));
    let mut groups: Vec<Vec<(String, Hyperreal)>> = Vec::new();
    for item in items {
        match groups.last_mut() {
            Some(g) if g[0].1.qual_compare(&item.1).is_eq() => g.push(item),
            _ => groups.push(vec![item]),
        }
    }
    let mut out = String::new();
    for (i, g) in groups.iter().enumerate() {
        let names: Vec<&str> = g.iter().map(|(n, _)| n.as_str()).collect();
        writeln!(out, "{}: {}", i + 1, names.join(" ~ ")).unwrap();
    }
    Ok(out)
}

fn vacuous(postulate: Postulate, reason: &str) -> PostulateReport {
    PostulateReport::holding(
        postulate,
        Method::Symbolic,
        Some(Witness::detail(format!("vacuous: {reason}"))),
    )
}

fn check_triple(
    m: &UtilityModel,
    space: &LotterySpace,
    (p, q, r): (&Lottery, &Lottery, &Lottery),
    options: &Options,
) -> Result<Vec<PostulateReport>> {
    m.ensure_positive(space)?;
    let grid = default_grid(options.grid);
    let mut sample = vec![p.clone(), q.clone(), r.clone()];
    for lambda in &grid {
        for (a, b) in [(p, q), (q, r), (p, r)] {
            sample.push(Lottery::mix(lambda, a, b)?);
        }
    }
    sample.dedup();
    let prefers = |a: &Lottery, b: &Lottery| -> Result<bool> {
        Ok(compare_lotteries(m, a, b)? == PreferenceVerdict::Prefers)
    };
    let pq = prefers(p, q)?;
    let chain = pq && prefers(q, r)?;

    let mut out = vec![check_weak_order(m, &sample)?];
    out.push(if pq {
        check_independence_classical(m, p, q, r, &grid)?
    } else {
        vacuous(Postulate::A2, "p > q fails")
    });
    out.push(check_qual_independence(m, space, p, q, r, &grid)?);
    if chain {
        out.push(check_continuity_classical(
            m,
            p,
            q,
            r,
            options.denominator_bound,
        )?);
        out.push(check_a3_prime(m, p, q, r)?);
        out.push(if overrides(m, space, p, q)? {
            vacuous(Postulate::A3DoublePrime, "p overrides q")
        } else {
            check_a3_doubleprime(m, space, p, q, r)?
        });
    } else {
        for postulate in [Postulate::A3, Postulate::A3Prime, Postulate::A3DoublePrime] {
            out.push(vacuous(postulate, "p > q > r fails"));
        }
    }
    Ok(out)
}

fn check_postulates(problem: &ProblemFile, options: &Options) -> Result<String> {
    if options.grid < 2 || options.denominator_bound < 2 {
        return Err(Error::PreconditionViolated(
            "grid and denominator bound must be at least 2".into(),
        ));
    }
    let m = problem.model()?;
    let space = problem.space()?;
    let mut out = String::new();
    for q in problem.queries() {
        if let Query::Check(a, b, c) = q {
            let (p, q, r) = (
                lottery(problem, a)?,
                lottery(problem, b)?,
                lottery(problem, c)?,
            );
            writeln!(out, "# {a} {b} {c}").unwrap();
            for report in check_triple(&m, &space, (&p, &q, &r), options)? {
                writeln!(out, "{report}").unwrap();
            }
        }
    }
    if out.is_empty() {
        return Err(Error::PreconditionViolated("no check queries".into()));
    }
    Ok(out)
}

fn canonical(problem: &ProblemFile) -> Result<String> {
    let m = problem.model()?;
    let space = problem.space()?;
    let c = canonicalize(&m, &space)?;
    let report = verify_equivalence(&m, &c, &space, 4)?;
    if !report.is_equivalent() {
        return Err(Error::ExtractionFailure(report.to_string()));
    }
    Ok(problem.with_model(&c.to_utility_model(&space)?).to_string())
}

fn subjective(problem: &ProblemFile) -> Result<String> {
    let measure = problem
        .measure()
        .cloned()
        .ok_or_else(|| Error::PreconditionViolated("no measure declared".into()))?;
    let oracle = ActPreferenceOracle::new(problem.model()?, measure, problem.space()?)?;
    let extraction = extract_probabilities(&oracle)?;
    let mut out = extraction.measure.to_string();
    let null: Vec<String> = extraction
        .null_states
        .iter()
        .map(|s| s.to_string())
        .collect();
    if null.is_empty() {
        out.push_str("null: -\n");
    } else {
        writeln!(out, "null: {}", null.join(" ")).unwrap();
    }
    Ok(out)
}

/// Outcomes are ranked worst to best in declaration order.
fn maximin_demo(problem: &ProblemFile) -> Result<String> {
    let order = problem.outcomes();
    let m = maximin_model(order)?;
    let mut items = named_lotteries(problem);
    if problem.lotteries().is_empty() {
        let half = rational(1, 2);
        for (i, a) in order.iter().enumerate() {
            for b in &order[i + 1..] {
                let l = Lottery::mix(
                    &half,
                    &Lottery::point_mass(a.clone()),
                    &Lottery::point_mass(b.clone()),
                )?;
                items.push((format!("{a}|{b}"), l));
            }
        }
    }
    let mut out = String::new();
    for (o, u) in m.iter() {
        writeln!(out, "u({o}) = {u}").unwrap();
    }
    let mut agree = 0;
    let mut total = 0;
    for (i, (na, a)) in items.iter().enumerate() {
        for (nb, b) in &items[i + 1..] {
            let equm = compare_lotteries(&m, a, b)?;
            let direct = maximin_oracle(a, b, order)?;
            total += 1;
            if equm == direct {
                agree += 1;
            }
            writeln!(
                out,
                "{na} vs {nb}  EQUM={equm}  maximin={direct}  {}",
                if equm == direct { "agree" } else { "DIFFER" }
            )
            .unwrap();
        }
    }
    writeln!(out, "agreement: {agree}/{total}").unwrap();
    Ok(out)
}
