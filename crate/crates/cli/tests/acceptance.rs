//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use selfnorm::abelian::{
    cyclotomic_action, delta_kernel_trivial, has_property_i, semidirect, AbelianPresentation,
    ModuleAction,
};
use selfnorm::families::{alternating, dicyclic, dihedral, modular_p3, psl2, symmetric};
use selfnorm::group::DEFAULT_ELEMENT_CAP;
use selfnorm::lattice::normalizer;
use selfnorm::structure::{fitting, minimal_nonabelian_legs, p_group_prime};
use selfnorm::{
    all_subgroups, cross_check_report, decide_brute, decide_fast, yn_invariant_suite, Branch,
    Group, Limits, Perm, Reason,
};
use selfnorm_cli::{build_group, parse_spec, run_args};

const DIHEDRAL_BUDGET: Duration = Duration::from_secs(30);
const NILPOTENT_BUDGET: Duration = Duration::from_secs(10);
const PSL28_BRUTE_BUDGET: Duration = Duration::from_secs(120);
const CORPUS_MIN_SIZE: usize = 40;
const CORPUS_MAX_ORDER: usize = 600;
const MODULE_MIN_COUNT: usize = 20;
const MODULE_MAX_CARRIER: usize = 200;
const SYM4_SUBGROUPS: usize = 30;
const LEGS_MAX_ORDER: usize = 64;

/// Outcome of one criterion: `Err` carries the first failure.
type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn limits() -> Limits {
    Limits::default()
}

fn group(spec: &str) -> Group {
    build_group(&parse_spec(spec).unwrap(), &limits()).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn witness_is_sound(g: &Group, spec: &str) -> Result<usize, String> {
    let v = decide_brute(g, &limits()).map_err(|e| e.to_string())?;
    ensure(!v.member, || format!("{spec} reported as member"))?;
    let w = v.witness.ok_or_else(|| format!("{spec}: no witness"))?;
    ensure(!g.is_abelian_subgroup(&w), || {
        format!("{spec}: abelian witness")
    })?;
    let n = normalizer(g, &w).map_err(|e| e.to_string())?;
    ensure(n.order() > w.order() && w.is_subgroup_of(&n), || {
        format!("{spec}: witness is self-normalizing")
    })?;
    Ok(w.order())
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let out = run_args(["selfnorm", "scan-dihedral", "--max", "60", "--json"]);
    let elapsed = start.elapsed();
    ensure(out.code == 0, || {
        format!("scan exited {}: {}", out.code, out.stderr)
    })?;
    let report: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| e.to_string())?;
    let rows = report["rows"].as_array().ok_or("no rows")?;
    ensure(rows.len() == 58, || format!("{} rows", rows.len()))?;
    for (row, n) in rows.iter().zip(3usize..) {
        let expected = n == 4 || n % 2 == 1;
        for key in ["bruteForce", "conjugateCount", "classifier"] {
            ensure(row[key].as_bool() == Some(expected), || {
                format!("D({n}): {key} = {}, expected {expected}", row[key])
            })?;
        }
    }
    ensure(elapsed < DIHEDRAL_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("58 dihedral groups, three methods, {elapsed:.2?}"))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let members = [
        ("Q8", dicyclic(2).unwrap()),
        ("D4", dihedral(4).unwrap()),
        ("Heis(3)", group("Heis(3)")),
        ("M27", modular_p3(3).unwrap()),
    ];
    for (name, g) in &members {
        let brute = decide_brute(g, &limits()).map_err(|e| e.to_string())?;
        let fast = decide_fast(g);
        ensure(brute.member && fast.member, || {
            format!("{name} not a member")
        })?;
        ensure(fast.branch == Branch::MinimalNonabelianPGroup, || {
            format!("{name} branch {}", fast.branch)
        })?;
    }
    let exponent = (0..members[3].1.order())
        .map(|x| members[3].1.element_order(x))
        .max();
    ensure(members[3].1.order() == 27 && exponent == Some(9), || {
        "M27 shape".into()
    })?;
    for spec in ["D(8)", "Dic(4)", "D(4)xC(2)", "Heis(3)xC(3)"] {
        let g = group(spec);
        witness_is_sound(&g, spec)?;
        ensure(!decide_fast(&g).member, || {
            format!("{spec}: classifier says member")
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < NILPOTENT_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "4 members, 4 non-members with witnesses, {elapsed:.2?}"
    ))
}

fn criterion_3() -> Check {
    let a5 = alternating(5).unwrap();
    ensure(decide_brute(&a5, &limits()).unwrap().member, || {
        "Alt(5) brute".into()
    })?;
    ensure(decide_fast(&a5).branch == Branch::SimpleAlt5, || {
        "Alt(5) fast".into()
    })?;

    let a6 = alternating(6).unwrap();
    witness_is_sound(&a6, "Alt(6)")?;
    ensure(!decide_fast(&a6).member, || "Alt(6) fast".into())?;

    let l27 = psl2(7).unwrap();
    let w = witness_is_sound(&l27, "PSL(2,7)")?;
    ensure(w == 12 || w == 24, || {
        format!("PSL(2,7) witness of order {w}")
    })?;
    ensure(!decide_fast(&l27).member, || "PSL(2,7) fast".into())?;

    let l28 = psl2(8).unwrap();
    let start = Instant::now();
    let brute = decide_brute(&l28, &limits()).map_err(|e| e.to_string())?;
    let brute_time = start.elapsed();
    ensure(l28.order() == 504 && brute.member, || {
        "PSL(2,8) brute".into()
    })?;
    ensure(decide_fast(&l28).branch == Branch::SimplePsl2, || {
        "PSL(2,8) fast".into()
    })?;
    ensure(brute_time < PSL28_BRUTE_BUDGET, || {
        format!("PSL(2,8) brute took {brute_time:?}")
    })?;

    let l216 = decide_fast(&psl2(16).unwrap());
    ensure(
        !l216.member && l216.reason == Reason::MersenneComposite { n: 4, mersenne: 15 },
        || format!("PSL(2,16): {}", l216.reason),
    )?;
    let l232 = psl2(32).unwrap();
    ensure(l232.order() == 32736 && decide_fast(&l232).member, || {
        "PSL(2,32)".into()
    })?;
    Ok(format!(
        "PSL(2,7) witness order {w}, PSL(2,8) brute force {brute_time:.2?}"
    ))
}

fn criterion_4() -> Check {
    for (spec, order, p) in [
        ("SD(3;7;[[2]])", 21, 3),
        ("SD(9;7;[[2]])", 63, 3),
        ("Dic(3)", 12, 2),
    ] {
        let g = group(spec);
        ensure(g.order() == order, || {
            format!("{spec} has order {}", g.order())
        })?;
        ensure(decide_brute(&g, &limits()).unwrap().member, || {
            format!("{spec} brute")
        })?;
        let v = decide_fast(&g);
        match v.reason {
            Reason::FrobeniusType { p: q, .. } if q == p && v.member => {}
            other => return Err(format!("{spec}: {other}")),
        }
    }
    let c7c9 = group("SD(9;7;[[2]])");
    let kernel = (0..c7c9.order())
        .filter(|&x| (0..c7c9.order()).all(|y| c7c9.commute(x, y)))
        .count();
    ensure(kernel == 3, || {
        format!("C7⋊C9 has centre of order {kernel}")
    })?;

    let s4 = symmetric(4).unwrap();
    ensure(!decide_brute(&s4, &limits()).unwrap().member, || {
        "Sym(4) brute".into()
    })?;
    let v = decide_fast(&s4);
    ensure(
        v.reason == Reason::FittingIndexNotPrime { index: 6 },
        || format!("Sym(4): {}", v.reason),
    )?;
    Ok("C7⋊C3, C7⋊C9, Dic(3) members; Sym(4) Fitting index 6".into())
}

/// Groups of order at most 600 covering every branch and reason.
fn corpus() -> Vec<&'static str> {
    vec![
        // abelian
        "C(1)",
        "C(2)",
        "C(6)",
        "C(12)",
        "C(2)xC(2)",
        "C(4)xC(2)",
        "C(3)xC(3)",
        // minimal non-abelian p-groups
        "D(4)",
        "Dic(2)",
        "Heis(3)",
        "SD(3;9;[[4]])",
        "SD(2;8;[[5]])",
        "SD(4;4;[[3]])",
        "Heis(5)",
        // other p-groups and nilpotent groups
        "D(8)",
        "Dic(4)",
        "D(4)xC(2)",
        "Heis(3)xC(3)",
        "Dic(2)xC(2)",
        "D(4)xC(3)",
        // soluble members
        "D(3)",
        "D(5)",
        "D(7)",
        "D(9)",
        "D(15)",
        "Dic(3)",
        "Dic(5)",
        "SD(3;7;[[2]])",
        "SD(9;7;[[2]])",
        "A(4)",
        "SD(3;5,5;[[0,-1],[1,-1]])",
        "SD(5;2,2,2,2;[[0,0,0,1],[1,0,0,1],[0,1,0,1],[0,0,1,1]])",
        "SD(5;11;[[3]])",
        "SD(3;13;[[3]])",
        "SD(2;3,3;[[-1,0],[0,-1]])",
        "SD(8;3;[[2]])",
        // soluble non-members
        "S(4)",
        "D(6)",
        "D(10)",
        "D(12)",
        "S(3)xC(3)",
        "S(3)xS(3)",
        "SD(4;5;[[2]])",
        "A(4)xC(2)",
        "Dic(6)",
        "D(4)xS(3)",
        // insoluble
        "A(5)",
        "PSL(2,7)",
        "A(6)",
        "PSL(2,8)",
        "S(5)",
        "A(5)xC(2)",
    ]
}

fn criterion_5() -> Check {
    let specs = corpus();
    ensure(specs.len() >= CORPUS_MIN_SIZE, || {
        format!("corpus has {} groups", specs.len())
    })?;
    let mut branches = BTreeSet::new();
    for spec in &specs {
        let g = group(spec);
        ensure(g.order() <= CORPUS_MAX_ORDER, || {
            format!("{spec} has order {}", g.order())
        })?;
        let c = cross_check_report(&g, &limits()).map_err(|e| format!("{spec}: {e}"))?;
        ensure(c.agree(), || {
            format!(
                "{spec}: brute {} conjcount {} fast {} ({})",
                c.brute.member, c.conjcount.member, c.fast.member, c.fast.reason
            )
        })?;
        branches.insert(c.fast.branch.to_string());
    }
    ensure(branches.len() == 6, || {
        format!("branches covered: {branches:?}")
    })?;
    Ok(format!(
        "{} groups, 100% agreement, all 6 branches",
        specs.len()
    ))
}

/// Prime-order actions with small carriers, including identity actions.
fn module_actions() -> Vec<(String, ModuleAction)> {
    let act = |factors: Vec<u64>, matrix: Vec<Vec<i64>>, p: u64| {
        ModuleAction::new(AbelianPresentation::new(factors).unwrap(), matrix, p).unwrap()
    };
    let mut out: Vec<(String, ModuleAction)> = [
        (3, 2),
        (3, 5),
        (5, 2),
        (5, 3),
        (3, 7),
        (3, 11),
        (3, 13),
        (7, 2),
    ]
    .into_iter()
    .map(|(p, q)| {
        (
            format!("cyclotomic({p},{q})"),
            cyclotomic_action(p, q).unwrap(),
        )
    })
    .collect();
    let more = [
        ("Z7 by 2, p=3", act(vec![7], vec![vec![2]], 3)),
        ("Z13 by 3, p=3", act(vec![13], vec![vec![3]], 3)),
        ("Z11 by 3, p=5", act(vec![11], vec![vec![3]], 5)),
        ("Z31 by 2, p=5", act(vec![31], vec![vec![2]], 5)),
        ("Z5 by -1, p=2", act(vec![5], vec![vec![-1]], 2)),
        ("Z9 by -1, p=2", act(vec![9], vec![vec![-1]], 2)),
        (
            "Z3^2 by -1, p=2",
            act(vec![3, 3], vec![vec![-1, 0], vec![0, -1]], 2),
        ),
        (
            "Z7^2 by diag(2,4), p=3",
            act(vec![7, 7], vec![vec![2, 0], vec![0, 4]], 3),
        ),
        ("Z14 by 9, p=3", act(vec![14], vec![vec![9]], 3)),
        (
            "Z3 x Z15 by diag(1,-1), p=2",
            act(vec![3, 15], vec![vec![1, 0], vec![0, -1]], 2),
        ),
        (
            "trivial module, p=3",
            ModuleAction::trivial(AbelianPresentation::new(vec![]).unwrap(), 3).unwrap(),
        ),
        (
            "identity on Z5, p=3",
            ModuleAction::trivial(AbelianPresentation::new(vec![5]).unwrap(), 3).unwrap(),
        ),
        (
            "identity on Z2^2, p=3",
            ModuleAction::trivial(AbelianPresentation::new(vec![2, 2]).unwrap(), 3).unwrap(),
        ),
        (
            "identity on Z7, p=2",
            ModuleAction::trivial(AbelianPresentation::new(vec![7]).unwrap(), 2).unwrap(),
        ),
    ];
    out.extend(more.into_iter().map(|(n, m)| (n.to_string(), m)));
    out
}

fn criterion_6() -> Check {
    let actions = module_actions();
    ensure(actions.len() >= MODULE_MIN_COUNT, || {
        format!("{} actions", actions.len())
    })?;
    let mut disagreements = Vec::new();
    for (name, m) in &actions {
        ensure(
            is_prime_order(m.actor_order()) && m.carrier().order() <= MODULE_MAX_CARRIER,
            || format!("{name} outside the tested range"),
        )?;
        let property = has_property_i(m).map_err(|e| format!("{name}: {e}"))?;
        let kernel = delta_kernel_trivial(m);
        let g = semidirect(m, DEFAULT_ELEMENT_CAP).map_err(|e| format!("{name}: {e}"))?;
        let member = decide_brute(&g, &limits())
            .map_err(|e| format!("{name}: {e}"))?
            .member;
        if !(property == kernel && kernel == member) {
            disagreements.push(format!(
                "{name} (I {property}, ker {kernel}, member {member})"
            ));
        }
    }
    ensure(disagreements.is_empty(), || {
        format!(
            "{}/{} disagree: {}",
            disagreements.len(),
            actions.len(),
            disagreements.join("; ")
        )
    })?;
    Ok(format!("{} actions, 100% agreement", actions.len()))
}

fn is_prime_order(n: u64) -> bool {
    selfnorm::arith::is_prime(n)
}

fn criterion_7() -> Check {
    for spec in ["A(5)", "PSL(2,8)", "D(15)", "Dic(2)", "SD(3;7;[[2]])"] {
        let r = yn_invariant_suite(&group(spec), &limits()).map_err(|e| format!("{spec}: {e}"))?;
        ensure(r.all_pass(), || format!("{spec}: {r:?}"))?;
    }
    let q8 = yn_invariant_suite(&dicyclic(2).unwrap(), &limits()).unwrap();
    ensure(q8.minimal_normal_orders == vec![2], || {
        "Q8 minimal normal subgroups".into()
    })?;
    Ok("Alt(5), PSL(2,8), D(15), Q8, C7⋊C3: all five checks".into())
}

/// Subgroups of the group generated by `gens`, found by closing the cyclic
/// subgroups under joins, all as explicit sets of permutations.
fn oracle_subgroups(gens: &[Perm]) -> BTreeSet<BTreeSet<Perm>> {
    fn close(seed: impl IntoIterator<Item = Perm>) -> BTreeSet<Perm> {
        let seed: Vec<Perm> = seed.into_iter().collect();
        let mut set: BTreeSet<Perm> = seed.iter().cloned().collect();
        set.insert(Perm::identity(seed[0].degree()));
        let mut frontier: Vec<Perm> = set.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for s in &seed {
                let y = x.compose(s);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }
    let all = close(gens.iter().cloned());
    let mut found: BTreeSet<BTreeSet<Perm>> = all.iter().map(|x| close([x.clone()])).collect();
    loop {
        let current: Vec<BTreeSet<Perm>> = found.iter().cloned().collect();
        let before = found.len();
        for a in &current {
            for b in &current {
                found.insert(close(a.iter().chain(b).cloned()));
            }
        }
        if found.len() == before {
            return found;
        }
    }
}

fn criterion_8() -> Check {
    let s4 = symmetric(4).unwrap();
    let lattice = all_subgroups(&s4, limits().lattice_threshold).unwrap();
    let oracle = oracle_subgroups(s4.generators());
    let ours: BTreeSet<BTreeSet<Perm>> = lattice
        .iter()
        .map(|h| h.elements().map(|i| s4.perm(i).clone()).collect())
        .collect();
    ensure(
        lattice.len() == SYM4_SUBGROUPS && oracle.len() == SYM4_SUBGROUPS && ours == oracle,
        || format!("lattice {} oracle {}", lattice.len(), oracle.len()),
    )?;

    let f = fitting(&s4);
    let v4: BTreeSet<Perm> = ["()", "(0 1)(2 3)", "(0 2)(1 3)", "(0 3)(1 2)"]
        .iter()
        .map(|c| selfnorm::parse_cycles(c, Some(4)).unwrap())
        .collect();
    let fitting_perms: BTreeSet<Perm> = f.elements().map(|i| s4.perm(i).clone()).collect();
    ensure(fitting_perms == v4, || "fitting(Sym(4)) is not V4".into())?;

    let mut checked = 0;
    for spec in corpus() {
        let g = group(spec);
        if g.order() > LEGS_MAX_ORDER || g.is_abelian() || p_group_prime(&g).is_none() {
            continue;
        }
        let lattice = all_subgroups(&g, limits().lattice_threshold).unwrap();
        let legs = minimal_nonabelian_legs(&g, &lattice).map_err(|e| e.to_string())?;
        ensure(legs.agree(), || format!("{spec}: {legs:?}"))?;
        checked += 1;
    }
    ensure(checked >= 8, || format!("only {checked} p-groups"))?;
    Ok(format!(
        "30 subgroups of Sym(4), F(Sym(4)) = V4, legs agree on {checked} p-groups"
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("dihedral law", criterion_1),
        ("nilpotent case", criterion_2),
        ("simple case", criterion_3),
        ("soluble case", criterion_4),
        ("oracle equivalence", criterion_5),
        ("property I reduction", criterion_6),
        ("invariant suites", criterion_7),
        ("structural oracles", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {}. {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
