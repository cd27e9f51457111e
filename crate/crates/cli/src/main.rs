//! Command-line front end: exact computations with group-ring twist ideals,
//! twisted orders of commutative algebraic groups, brute-force oracles, and
//! the verification suite.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition violated,
//! 4 resource bound exceeded, 5 verification failure.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use twistor::algebraic_groups::GroupModel;
use twistor::cyclopoly::{divisors, inflate_charpoly, IntPoly};
use twistor::galois_modules::twist_charpoly;
use twistor::grouprings::{
    annihilator, cyclic_twist_ideal, isotypic_ideal, norm_generators_equal_annihilator,
    permutation_scan, semidirect_twist_ideal, FiniteGroup, GroupKind, GroupRingIdeal,
    SubgroupDescriptor,
};
use twistor::{Error, Result};

#[derive(Parser)]
#[command(name = "twistor", version, about = "Exact twist arithmetic for commutative algebraic groups over finite fields")]
struct Cli {
    /// Size of the worker thread pool (also read from TWISTOR_WORKERS).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the twist ideal of a group and its structural invariants.
    Ideal(IdealArgs),
    /// Twisted orders of a concrete group model by the char-poly route.
    Order(ModelArgs),
    /// Enumerate the primitive subgroup by brute force and cross-check.
    Bruteforce(BruteforceArgs),
    /// Inflated characteristic polynomial, with the dual-route cross-check.
    Charpoly(CharpolyArgs),
    /// Scan all permutations of a group for the coset and ideal conditions.
    Perms(IdealArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct IdealArgs {
    /// Group spec: cyclic:<r>, product:<r1>x<r2>, dihedral:<r>,
    /// or semidirect:<r>:<h>:<e>.
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct ModelArgs {
    /// Model spec: gm:p=<p>,m=<deg> or ec:p=<p>,a=<a>,b=<b>.
    #[arg(long)]
    model: String,
    /// Twisting degree (the order of the Galois group).
    #[arg(long)]
    r: usize,
}

#[derive(Args)]
struct BruteforceArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Include the element indices of the primitive subgroup in the output.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct CharpolyArgs {
    /// Base polynomial, ascending comma-separated integer coefficients
    /// (monic), e.g. "-5,1" for X - 5.
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    /// Degree of the ground extension.
    #[arg(long)]
    r: u64,
    /// Order of the twisting automorphism; must divide r.
    #[arg(long)]
    d: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single criterion (1-10) instead of all of them.
    #[arg(long)]
    criterion: Option<usize>,
}

// ---------------------------------------------------------------------------
// spec parsing

fn parse_group(spec: &str) -> Result<FiniteGroup> {
    let err = |m: &str| Error::Parse(format!("group spec '{spec}': {m}"));
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| err("expected <kind>:<params>"))?;
    let num = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| err(&format!("'{s}' is not a number")))
    };
    match kind {
        "cyclic" => FiniteGroup::cyclic(num(rest)?),
        "product" => {
            let (a, b) = rest
                .split_once('x')
                .ok_or_else(|| err("expected product:<r1>x<r2>"))?;
            FiniteGroup::product_of_cyclics(num(a)?, num(b)?)
        }
        "dihedral" => FiniteGroup::dihedral(num(rest)?),
        "semidirect" => {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(err("expected semidirect:<r>:<h>:<e>"));
            }
            FiniteGroup::semidirect(num(parts[0])?, num(parts[1])?, num(parts[2])?)
        }
        _ => Err(err("unknown kind")),
    }
}

fn parse_model(spec: &str, r: usize) -> Result<GroupModel> {
    let err = |m: &str| Error::Parse(format!("model spec '{spec}': {m}"));
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| err("expected <kind>:<params>"))?;
    let mut fields = std::collections::BTreeMap::new();
    for part in rest.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| err("expected key=value pairs"))?;
        let v: u64 = v
            .parse()
            .map_err(|_| err(&format!("'{v}' is not a number")))?;
        fields.insert(k.to_string(), v);
    }
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| err(&format!("missing field '{k}'")))
    };
    match kind {
        "gm" => {
            let p = get("p")?;
            let m = fields.get("m").copied().unwrap_or(1) as usize;
            GroupModel::multiplicative(p, m, r)
        }
        "ec" => GroupModel::elliptic(get("p")?, get("a")?, get("b")?, r),
        _ => Err(err("unknown kind (expected gm or ec)")),
    }
}

fn parse_poly(spec: &str) -> Result<IntPoly> {
    let coeffs: Result<Vec<i64>> = spec
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("polynomial coefficient '{s}' is not an integer")))
        })
        .collect();
    Ok(IntPoly::from_i64(&coeffs?))
}

// ---------------------------------------------------------------------------
// output documents

fn big_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[derive(Serialize)]
struct IdealBasisDoc {
    rank: usize,
    basis: Vec<Vec<String>>,
    saturated: bool,
    right_ideal: bool,
}

#[derive(Serialize)]
struct IsotypicDoc {
    kernel_subgroup: Vec<usize>,
    #[serde(flatten)]
    ideal: IdealBasisDoc,
}

#[derive(Serialize)]
struct IdealDoc {
    group: String,
    group_order: usize,
    twist_ideal: IdealBasisDoc,
    annihilator: IdealBasisDoc,
    /// For cyclic groups: the annihilator of the ideal is principal,
    /// generated by the norm-type element (None for other groups).
    annihilator_principal: Option<bool>,
    /// For abelian groups: one isotypic ideal per cyclic-quotient subgroup.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    isotypic: Vec<IsotypicDoc>,
    elapsed_ms: u128,
}

fn basis_doc(ideal: &GroupRingIdeal) -> IdealBasisDoc {
    IdealBasisDoc {
        rank: ideal.rank(),
        basis: (0..ideal.rank())
            .map(|i| big_strings(ideal.lattice().basis().row(i)))
            .collect(),
        saturated: ideal.is_saturated(),
        right_ideal: ideal.is_right_ideal(),
    }
}

#[derive(Serialize)]
struct OrderDoc {
    model: String,
    r: usize,
    frobenius_charpoly: Vec<String>,
    base_order: String,
    twisted_order: String,
    orders_by_divisor: Vec<(usize, String)>,
    top_point_count: String,
    product_check: bool,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct BruteforceDoc {
    model: String,
    r: usize,
    count: u64,
    is_subgroup: bool,
    charpoly_order: String,
    matches_charpoly: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<String>>,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct CharpolyDoc {
    f: Vec<String>,
    r: u64,
    d: u64,
    inflated: Vec<String>,
    twist_route: Vec<String>,
    routes_agree: bool,
    order_at_one: String,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct PermsDoc {
    group: String,
    group_order: usize,
    permutations: String,
    coset_condition_count: usize,
    ideal_stabilizer_count: usize,
    conditions_coincide: bool,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct VerifyDoc {
    criteria: Vec<CriterionDoc>,
    all_passed: bool,
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct CriterionDoc {
    number: usize,
    name: String,
    passed: bool,
    cases: usize,
    failures: Vec<String>,
}

fn emit<T: Serialize>(doc: &T, pretty_lines: Option<Vec<String>>, pretty: bool) {
    if pretty {
        if let Some(lines) = pretty_lines {
            for l in lines {
                println!("{l}");
            }
            return;
        }
    }
    println!("{}", serde_json::to_string_pretty(doc).expect("serialize"));
}

// ---------------------------------------------------------------------------
// command handlers

fn twist_ideal_for(group: &FiniteGroup) -> Result<GroupRingIdeal> {
    match group.kind() {
        GroupKind::Cyclic(_) => cyclic_twist_ideal(group),
        GroupKind::Semidirect { .. } => semidirect_twist_ideal(group),
        _ => Err(Error::Precondition(
            "twist ideals are defined for cyclic and semidirect groups".into(),
        )),
    }
}

fn cmd_ideal(args: &IdealArgs, pretty: bool) -> Result<()> {
    let t0 = Instant::now();
    let g = parse_group(&args.group)?;
    let ideal = twist_ideal_for(&g)?;
    let ann = annihilator(&ideal);
    let annihilator_principal = match g.kind() {
        GroupKind::Cyclic(_) => Some(norm_generators_equal_annihilator(&g)?),
        _ => None,
    };
    let mut isotypic = Vec::new();
    if g.is_abelian() {
        for sub in g.all_subgroups() {
            let h = SubgroupDescriptor::new(&g, &sub)?;
            if let Ok(i) = isotypic_ideal(&g, &h) {
                isotypic.push(IsotypicDoc {
                    kernel_subgroup: sub,
                    ideal: basis_doc(&i),
                });
            }
        }
    }
    let doc = IdealDoc {
        group: args.group.clone(),
        group_order: g.order(),
        twist_ideal: basis_doc(&ideal),
        annihilator: basis_doc(&ann),
        annihilator_principal,
        isotypic,
        elapsed_ms: t0.elapsed().as_millis(),
    };
    let mut lines = vec![
        format!("group {} (order {})", doc.group, doc.group_order),
        format!(
            "twist ideal: rank {}, saturated {}, right ideal {}",
            doc.twist_ideal.rank, doc.twist_ideal.saturated, doc.twist_ideal.right_ideal
        ),
    ];
    lines.push("twist ideal basis (row HNF):".into());
    for row in &doc.twist_ideal.basis {
        lines.push(format!("  [{}]", row.join(", ")));
    }
    lines.push(format!("annihilator: rank {}", doc.annihilator.rank));
    for row in &doc.annihilator.basis {
        lines.push(format!("  [{}]", row.join(", ")));
    }
    if let Some(p) = doc.annihilator_principal {
        lines.push(format!("annihilator principal: {p}"));
    }
    for iso in &doc.isotypic {
        lines.push(format!(
            "isotypic ideal (kernel {:?}): rank {}, saturated {}",
            iso.kernel_subgroup, iso.ideal.rank, iso.ideal.saturated
        ));
        for row in &iso.ideal.basis {
            lines.push(format!("  [{}]", row.join(", ")));
        }
    }
    emit(&doc, Some(lines), pretty);
    Ok(())
}

fn cmd_order(args: &ModelArgs, pretty: bool) -> Result<()> {
    let t0 = Instant::now();
    let model = parse_model(&args.model, args.r)?;
    let mut by_div = Vec::new();
    for d in divisors(args.r as u64) {
        let d = d as usize;
        by_div.push((d, model.twisted_order_at(d)?.to_string()));
    }
    let doc = OrderDoc {
        model: args.model.clone(),
        r: args.r,
        frobenius_charpoly: big_strings(model.frobenius_charpoly()?.coeffs()),
        base_order: model.base_order()?.to_string(),
        twisted_order: model.twisted_order()?.to_string(),
        orders_by_divisor: by_div,
        top_point_count: model.top_point_count()?.to_string(),
        product_check: model.restriction_order_product_check()?,
        elapsed_ms: t0.elapsed().as_millis(),
    };
    let mut lines = vec![
        format!("model {} over extension degree {}", doc.model, doc.r),
        format!(
            "frobenius charpoly (ascending): [{}]",
            doc.frobenius_charpoly.join(", ")
        ),
        format!("base order: {}", doc.base_order),
        format!("twisted order: {}", doc.twisted_order),
        format!("top point count: {}", doc.top_point_count),
        format!("product check: {}", doc.product_check),
    ];
    for (d, o) in &doc.orders_by_divisor {
        lines.push(format!("  degree-{d} twisted order: {o}"));
    }
    emit(&doc, Some(lines), pretty);
    Ok(())
}

fn cmd_bruteforce(args: &BruteforceArgs, pretty: bool) -> Result<bool> {
    let t0 = Instant::now();
    let model = parse_model(&args.model.model, args.model.r)?;
    let prim = model.primitive_subgroup_bruteforce()?;
    let charpoly_order = model.twisted_order()?;
    let matches = BigInt::from(prim.count) == charpoly_order;
    let elements = if args.list {
        Some(
            prim.elements
                .iter()
                .map(|p| format!("{p:?}"))
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    let doc = BruteforceDoc {
        model: args.model.model.clone(),
        r: args.model.r,
        count: prim.count,
        is_subgroup: prim.is_subgroup,
        charpoly_order: charpoly_order.to_string(),
        matches_charpoly: matches,
        elements,
        elapsed_ms: t0.elapsed().as_millis(),
    };
    let lines = vec![
        format!("model {} over extension degree {}", doc.model, doc.r),
        format!("brute-force count: {}", doc.count),
        format!("subgroup axioms verified: {}", doc.is_subgroup),
        format!(
            "char-poly order: {} (match: {})",
            doc.charpoly_order, doc.matches_charpoly
        ),
    ];
    emit(&doc, Some(lines), pretty);
    if !matches || !prim.is_subgroup {
        eprintln!("error: brute-force result disagrees with the char-poly route");
        return Ok(false);
    }
    Ok(true)
}

fn cmd_charpoly(args: &CharpolyArgs, pretty: bool) -> Result<bool> {
    let t0 = Instant::now();
    let f = parse_poly(&args.f)?;
    if args.d == 0 || args.r == 0 || args.r % args.d != 0 {
        return Err(Error::Parse(format!(
            "d = {} must be a positive divisor of r = {}",
            args.d, args.r
        )));
    }
    let inflated = inflate_charpoly(&f, args.r, args.d)?;
    let g = FiniteGroup::cyclic(args.r as usize)?;
    let ideal = cyclic_twist_ideal(&g)?.as_galois_lattice();
    let gamma = g.pow(g.tau(), (args.r / args.d) as usize);
    let twist_route = twist_charpoly(&ideal, &f, gamma)?;
    let agree = inflated == twist_route;
    let order = twistor::cyclopoly::eval_at_one_abs(&inflated);
    let doc = CharpolyDoc {
        f: big_strings(f.coeffs()),
        r: args.r,
        d: args.d,
        inflated: big_strings(inflated.coeffs()),
        twist_route: big_strings(twist_route.coeffs()),
        routes_agree: agree,
        order_at_one: order.to_string(),
        elapsed_ms: t0.elapsed().as_millis(),
    };
    let lines = vec![
        format!("f (ascending): [{}]", doc.f.join(", ")),
        format!(
            "inflated charpoly r={} d={}: [{}]",
            doc.r,
            doc.d,
            doc.inflated.join(", ")
        ),
        format!("twist route: [{}]", doc.twist_route.join(", ")),
        format!("routes agree: {}", doc.routes_agree),
        format!("|value at 1|: {}", doc.order_at_one),
    ];
    emit(&doc, Some(lines), pretty);
    if !agree {
        eprintln!("error: the two characteristic-polynomial routes disagree");
        return Ok(false);
    }
    Ok(true)
}

fn cmd_perms(args: &IdealArgs, pretty: bool) -> Result<()> {
    let t0 = Instant::now();
    let g = parse_group(&args.group)?;
    let (star, stab, coincide) = permutation_scan(&g)?;
    let total: u128 = (1..=g.order() as u128).product();
    let doc = PermsDoc {
        group: args.group.clone(),
        group_order: g.order(),
        permutations: total.to_string(),
        coset_condition_count: star,
        ideal_stabilizer_count: stab,
        conditions_coincide: coincide,
        elapsed_ms: t0.elapsed().as_millis(),
    };
    let lines = vec![
        format!(
            "group {} (order {}), {} permutations scanned",
            doc.group, doc.group_order, doc.permutations
        ),
        format!("coset condition holds for: {star}"),
        format!("ideal stabilizer count: {stab}"),
        format!("the two conditions coincide: {coincide}"),
    ];
    emit(&doc, Some(lines), pretty);
    Ok(())
}

fn cmd_verify(args: &VerifyArgs, pretty: bool) -> Result<bool> {
    let t0 = Instant::now();
    let reports = match args.criterion {
        Some(n) => vec![twistor::verify::run_numbered(n).ok_or_else(|| {
            Error::Parse(format!("criterion {n} does not exist (valid: 1-10)"))
        })?],
        None => twistor::verify::run_all(),
    };
    let all_passed = reports.iter().all(|r| r.passed);
    let doc = VerifyDoc {
        criteria: reports
            .iter()
            .map(|r| CriterionDoc {
                number: r.number,
                name: r.name.to_string(),
                passed: r.passed,
                cases: r.cases,
                failures: r.failures.clone(),
            })
            .collect(),
        all_passed,
        elapsed_ms: t0.elapsed().as_millis(),
    };
    let mut lines = Vec::new();
    for c in &doc.criteria {
        lines.push(format!(
            "[{}] criterion {:2}: {} ({} cases)",
            if c.passed { "PASS" } else { "FAIL" },
            c.number,
            c.name,
            c.cases
        ));
        for f in &c.failures {
            lines.push(format!("       failure: {f}"));
        }
    }
    emit(&doc, Some(lines), pretty);
    Ok(all_passed)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Ideal(a) => cmd_ideal(a, cli.pretty).map(|_| true),
        Command::Order(a) => cmd_order(a, cli.pretty).map(|_| true),
        Command::Bruteforce(a) => cmd_bruteforce(a, cli.pretty),
        Command::Charpoly(a) => cmd_charpoly(a, cli.pretty),
        Command::Perms(a) => cmd_perms(a, cli.pretty).map(|_| true),
        Command::Verify(a) => cmd_verify(a, cli.pretty),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers.or_else(|| {
        std::env::var("TWISTOR_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: could not configure {n} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(5),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) => ExitCode::from(2),
                Error::Precondition(_) => ExitCode::from(3),
                Error::Resource(_) => ExitCode::from(4),
            }
        }
    }
}
