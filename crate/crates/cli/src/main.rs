use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use lietype::gfq::is_irreducible;
use lietype::invariants::{
    bockstein, bockstein_square_vanishing, brute_force_first_nonzero_degree,
    brute_force_invariant_dimension, explicit_generator, first_nonzero_degree, invariant_monomials,
    GradedElement, GradedInvariantModel, ORACLE_MAX_DEGREE,
};
use lietype::limits::DEFAULT_ELEMENT_BOUND;
use lietype::rootaction::cross_check;
use lietype::suite::{run_all, BOCKSTEIN_SEED, CRITERIA};
use lietype::unipotent::{
    build_regular_subgroup, composite_iso_check, exponent_of_u, fixed_flags, flag_count,
    is_regular_unipotent, orbit_decomposition, superdiagonal_subgroup,
};
use lietype::{
    Claim, DynkinType, Error, Family, FieldTable, FqMatrix, LatticeKind, LieGroupData, Limits,
    RootSystem, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "lietype",
    version,
    about = "Exhaustive checks on finite groups of Lie type over small fields"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Include wall-clock time in the report (output is then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Largest number of group elements any enumeration may visit.
    #[arg(long, global = true, env = "LIETYPE_BUDGET", default_value_t = DEFAULT_ELEMENT_BOUND)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(clap::Args)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    r: u32,
}

#[derive(clap::Args)]
struct GroupArgs {
    /// GL, SL or Sp.
    #[arg(long)]
    family: Family,
    /// Matrix size (even for Sp).
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    r: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Field construction: modulus, primitive element, Frobenius.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
        /// Monic modulus coefficients, constant term first, comma separated.
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
    /// Positive roots, heights, Coxeter number and good primes up to 31.
    RootSystem {
        #[arg(long = "type")]
        dynkin_type: DynkinType,
        #[arg(long)]
        rank: usize,
    },
    /// Divisibility of each root in the root or weight lattice.
    Divisibility {
        #[arg(long = "type")]
        dynkin_type: DynkinType,
        #[arg(long)]
        rank: usize,
        /// root or weight.
        #[arg(long)]
        lattice: LatticeKind,
    },
    /// Exponent of the Sylow p-subgroup U.
    Exponent(GroupArgs),
    /// Build the elementary abelian subgroup of regular unipotents and check it.
    RegularSubgroup(GroupArgs),
    /// Flags fixed by the regular subgroup.
    FixedFlags(GroupArgs),
    /// Orbit sizes of the regular subgroup on all flags.
    Orbits(GroupArgs),
    /// Invariant dimensions by degree, with oracle cross-check.
    Invariants {
        #[command(flatten)]
        field: FieldArgs,
        /// Index d of the subgroup of the units.
        #[arg(long)]
        index: u64,
        #[arg(long)]
        max_degree: u32,
    },
    /// Least positive degree with a nonzero invariant.
    FirstDegree {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        index: u64,
    },
    /// Bockstein on the lowest invariant of the full unit group.
    Bockstein {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Torus action on every root subgroup.
    RootAction(GroupArgs),
    /// Run the whole acceptance suite.
    VerifyAll,
}

struct Output {
    report: VerificationReport,
    data: Map<String, Value>,
}

impl Output {
    fn new(command: &str) -> Output {
        Output {
            report: VerificationReport::new(command),
            data: Map::new(),
        }
    }

    fn param(mut self, key: &str, value: impl std::fmt::Display) -> Output {
        self.report = self.report.parameter(key, value);
        self
    }

    fn set(&mut self, key: &str, value: Value) {
        self.data.insert(key.to_string(), value);
    }

    fn claim(&mut self, c: Claim) {
        self.report.push(c);
    }
}

fn group(args: &GroupArgs, limits: Limits) -> lietype::Result<LieGroupData> {
    LieGroupData::with_limits(
        args.family,
        args.n,
        FieldTable::new(args.p, args.r, None)?,
        limits,
    )
}

fn group_output(command: &str, args: &GroupArgs) -> Output {
    Output::new(command)
        .param("family", args.family)
        .param("n", args.n)
        .param("p", args.p)
        .param("r", args.r)
}

fn field_info(args: &FieldArgs, modulus: Option<&[u32]>) -> lietype::Result<Output> {
    let f = FieldTable::new(args.p, args.r, modulus)?;
    let mut out = Output::new("field-info")
        .param("p", args.p)
        .param("r", args.r);
    if let Some(m) = modulus {
        out = out.param(
            "modulus",
            m.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
        );
    }
    let g = f.primitive_element();
    out.set("field", json!(f.to_string()));
    out.set("q", json!(f.q()));
    out.set("modulus", json!(f.modulus()));
    out.set("primitive_element", json!(f.display(g)));
    out.set(
        "fp_basis",
        json!(f
            .fp_basis()
            .iter()
            .map(|&x| f.display(x))
            .collect::<Vec<_>>()),
    );
    out.claim(Claim::holds(
        "modulus is irreducible",
        "field-construction",
        is_irreducible(f.modulus(), f.p()),
    ));
    out.claim(Claim::equal(
        "multiplicative order of the primitive element",
        "field-construction",
        f.q() as u64 - 1,
        f.multiplicative_order(g).unwrap_or(0),
    ));
    let frobenius_order = f.elements().all(|x| {
        let mut y = x;
        for _ in 0..f.r() {
            y = f.frobenius(y);
        }
        y == x
    });
    out.claim(Claim::holds(
        "Frobenius to the r-th power is the identity",
        "field-construction",
        frobenius_order,
    ));
    Ok(out)
}

fn root_system(t: DynkinType, rank: usize) -> lietype::Result<Output> {
    let rs = RootSystem::new(t, rank)?;
    let mut out = Output::new("root-system")
        .param("type", t)
        .param("rank", rank);
    let h = rs.coxeter_number();
    let roots: Vec<Value> = rs
        .positive_roots()
        .iter()
        .map(|a| json!({"root": a.to_string(), "height": a.level()}))
        .collect();
    out.set("system", json!(rs.name()));
    out.set("cartan", json!(rs.cartan()));
    out.set("positive_roots", Value::Array(roots));
    out.set("coxeter_number", json!(h));
    out.set("highest_root", json!(rs.highest_root().to_string()));
    out.set("good_primes", json!(rs.good_primes_up_to(31)));
    out.claim(Claim::equal(
        "number of positive roots is rank·h/2",
        "root-count",
        rank * h as usize / 2,
        rs.positive_roots().len(),
    ));
    out.claim(Claim::equal(
        "height of the highest root is h − 1",
        "coxeter-number",
        h as i64 - 1,
        rs.highest_root().level(),
    ));
    let good_if_h_small = rs.good_primes_up_to(31).len()
        == (2..=31u64)
            .filter(|&p| lietype::gfq::is_prime(p) && rs.is_good_prime(p))
            .count()
        && (2..=31u64)
            .filter(|&p| lietype::gfq::is_prime(p) && h as u64 <= p)
            .all(|p| rs.is_good_prime(p));
    out.claim(Claim::holds(
        "every prime p ≤ 31 with h ≤ p is good",
        "good-primes",
        good_if_h_small,
    ));
    Ok(out)
}

fn divisibility(t: DynkinType, rank: usize, lattice: LatticeKind) -> lietype::Result<Output> {
    let rs = RootSystem::new(t, rank)?;
    let lattice_name = match lattice {
        LatticeKind::RootLattice => "root",
        LatticeKind::WeightLattice => "weight",
    };
    let mut out = Output::new("divisibility")
        .param("type", t)
        .param("rank", rank)
        .param("lattice", lattice_name);
    let mut rows = Vec::new();
    let mut ok = true;
    for a in rs.positive_roots() {
        let m = rs.divisibility_in_lattice(a, lattice)?;
        let expected = match lattice {
            LatticeKind::WeightLattice if rs.is_symplectic_type() && rs.is_long(a) => 2,
            _ => 1,
        };
        ok &= m == expected;
        rows.push(json!({"root": a.to_string(), "long": rs.is_long(a), "divisibility": m}));
    }
    out.set("roots", Value::Array(rows));
    let expectation = match lattice {
        LatticeKind::RootLattice => "every root is primitive in the root lattice",
        LatticeKind::WeightLattice => {
            "only long roots of type C are divisible (by 2) in the weight lattice"
        }
    };
    out.claim(Claim::holds(expectation, "lattice-divisibility", ok));
    Ok(out)
}

fn exponent(args: &GroupArgs, limits: Limits) -> lietype::Result<Output> {
    let g = group(args, limits)?;
    let mut out = group_output("exponent", args);
    let p = args.p as u64;
    let h = g.coxeter_number() as u64;
    let e = exponent_of_u(&g)?;
    out.set("group", json!(g.name()));
    out.set("coxeter_number", json!(h));
    out.set("u_order", json!(g.u_order().to_string()));
    out.set("exponent", json!(e));
    if h <= p {
        out.claim(Claim::equal(
            "exponent of U equals p when h ≤ p",
            "unipotent-exponent",
            p,
            e,
        ));
    } else {
        out.set(
            "note",
            json!(format!(
                "h = {h} > p = {p}, so the bound exponent = p does not apply"
            )),
        );
        let mut x = e;
        while x % p == 0 {
            x /= p;
        }
        out.claim(Claim::new(
            "exponent of U is a power of p",
            "unipotent-exponent",
            "power of p",
            e,
            x == 1 && e > 1,
        ));
    }
    Ok(out)
}

fn regular_subgroup(args: &GroupArgs, limits: Limits) -> lietype::Result<Output> {
    let g = group(args, limits)?;
    let f = g.field();
    let a = build_regular_subgroup(&g)?;
    let mut out = group_output("regular-subgroup", args);
    out.set("group", json!(g.name()));
    out.set(
        "generators",
        json!(a
            .generators()
            .iter()
            .map(|x| x.render(f))
            .collect::<Vec<_>>()),
    );
    out.set("order", json!(a.order()));
    out.claim(Claim::equal(
        "order of A is q",
        "regular-subgroup",
        f.q() as usize,
        a.order(),
    ));
    let commute = a
        .generators()
        .iter()
        .all(|x| a.generators().iter().all(|y| x.mul(y, f) == y.mul(x, f)));
    let exponent_p = a
        .elements()
        .iter()
        .all(|x| x.pow(f.p() as u64, f).is_identity());
    out.claim(Claim::holds(
        "A is elementary abelian",
        "regular-subgroup",
        commute && exponent_p,
    ));
    let mut regular = 0;
    for x in a.elements().iter().filter(|x| !x.is_identity()) {
        regular += is_regular_unipotent(&g, x)? as usize;
    }
    out.claim(Claim::equal(
        "nontrivial elements of A that are regular",
        "regular-subgroup",
        a.order() - 1,
        regular,
    ));
    for s in 0..g.rank() {
        out.claim(Claim::holds(
            format!("A → U/U_s is an isomorphism for s = {}", s + 1),
            "composite-isomorphism",
            composite_iso_check(&g, a.elements(), s)?,
        ));
    }
    Ok(out)
}

/// The regular subgroup when it exists, otherwise the superdiagonal
/// subgroup (for `h > p`).
fn acting_generators(g: &LieGroupData, out: &mut Output) -> lietype::Result<Vec<FqMatrix>> {
    if g.coxeter_number() <= g.field().p() {
        out.set("acting_group", json!("regular elementary abelian subgroup"));
        Ok(build_regular_subgroup(g)?.generators().to_vec())
    } else {
        out.set("acting_group", json!("superdiagonal subgroup (h > p)"));
        Ok(superdiagonal_subgroup(g)?.generators().to_vec())
    }
}

fn fixed(args: &GroupArgs, limits: Limits) -> lietype::Result<Output> {
    let g = group(args, limits)?;
    let f = g.field();
    let mut out = group_output("fixed-flags", args);
    let gens = acting_generators(&g, &mut out)?;
    let flags = fixed_flags(&g, &gens)?;
    let rendered: Vec<Value> = flags
        .iter()
        .map(|fl| {
            json!(fl
                .subspaces()
                .iter()
                .map(|v| v
                    .iter()
                    .map(|row| row.iter().map(|&x| f.display(x)).collect::<Vec<_>>())
                    .collect::<Vec<_>>())
                .collect::<Vec<_>>())
        })
        .collect();
    out.set("group", json!(g.name()));
    out.set("fixed_flags", Value::Array(rendered));
    out.claim(Claim::equal(
        "number of flags fixed by A",
        "unique-fixed-flag",
        1,
        flags.len(),
    ));
    Ok(out)
}

fn orbits(args: &GroupArgs, limits: Limits) -> lietype::Result<Output> {
    let g = group(args, limits)?;
    let p = g.field().p() as usize;
    let mut out = group_output("orbits", args);
    let gens = acting_generators(&g, &mut out)?;
    let sizes = orbit_decomposition(&g, &gens)?;
    let total: usize = sizes.iter().map(|(s, c)| s * c).sum();
    out.set("group", json!(g.name()));
    out.set(
        "orbit_sizes",
        json!(sizes
            .iter()
            .map(|(s, c)| (s.to_string(), *c))
            .collect::<BTreeMap<_, _>>()),
    );
    out.set("flags", json!(total));
    out.claim(Claim::equal(
        "total number of flags",
        "orbit-sizes",
        flag_count(args.n, g.field().q() as u64),
        total as u128,
    ));
    out.claim(Claim::equal(
        "number of singleton orbits",
        "orbit-sizes",
        1,
        sizes.get(&1).copied().unwrap_or(0),
    ));
    let p_power = sizes.keys().all(|&s| {
        let mut x = s;
        while x % p == 0 {
            x /= p;
        }
        x == 1
    });
    out.claim(Claim::holds(
        format!("every orbit size is a power of {p}"),
        "orbit-sizes",
        p_power,
    ));
    Ok(out)
}

fn invariants(args: &FieldArgs, index: u64, max_degree: u32) -> lietype::Result<Output> {
    let model = GradedInvariantModel::new(args.p, args.r, index)?;
    let mut out = Output::new("invariants")
        .param("p", args.p)
        .param("r", args.r)
        .param("index", index)
        .param("max_degree", max_degree);
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for m in 0..=max_degree {
        let monos = invariant_monomials(&model, m);
        rows.push(json!({
            "degree": m,
            "dimension": monos.len(),
            "monomials": monos.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
        }));
        if m > ORACLE_MAX_DEGREE {
            skipped.push(m);
            continue;
        }
        match brute_force_invariant_dimension(&model, m) {
            Ok(d) => out.claim(Claim::equal(
                format!("degree {m}: weight count agrees with the oracle"),
                "oracle-agreement",
                monos.len() as u64,
                d,
            )),
            Err(Error::BoundExceeded { .. }) => skipped.push(m),
            Err(e) => return Err(e),
        }
    }
    out.set("degrees", Value::Array(rows));
    out.set("invariance_modulus", json!(model.invariance_modulus()));
    if !skipped.is_empty() {
        out.set("oracle_skipped_degrees", json!(skipped));
    }
    Ok(out)
}

fn first_degree(args: &FieldArgs, index: u64) -> lietype::Result<Output> {
    let model = GradedInvariantModel::new(args.p, args.r, index)?;
    let mut out = Output::new("first-degree")
        .param("p", args.p)
        .param("r", args.r)
        .param("index", index);
    let (p, r) = (args.p, args.r);
    let computed = first_nonzero_degree(&model)?;
    out.set("first_degree", json!(computed));
    match index {
        1 => out.claim(Claim::equal(
            "first nonzero invariant degree is r(2p−3)",
            "invariant-degree",
            r * (2 * p - 3),
            computed,
        )),
        2 if p != 2 => out.claim(Claim::equal(
            "first nonzero invariant degree for the squares is r(p−2)",
            "square-invariant-degree",
            r * (p - 2),
            computed,
        )),
        _ => {}
    }
    if p != 2 && index <= 2 {
        let g = explicit_generator(&model)?;
        out.set("generator", json!(g.monomial.to_string()));
        out.claim(Claim::equal(
            "explicit generator has the first degree",
            "invariant-generator",
            computed,
            g.degree,
        ));
    }
    let field = FieldTable::new(p, r, None)?;
    match brute_force_first_nonzero_degree(&field, index) {
        Ok(d) => out.claim(Claim::equal(
            "oracle finds the same first degree",
            "oracle-agreement",
            computed,
            d,
        )),
        Err(Error::BoundExceeded { .. }) => {
            out.set("oracle", json!("skipped: beyond the oracle bound"))
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn bockstein_cmd(args: &FieldArgs) -> lietype::Result<Output> {
    let model = GradedInvariantModel::new(args.p, args.r, 1)?;
    let mut out = Output::new("bockstein")
        .param("p", args.p)
        .param("r", args.r);
    let g = explicit_generator(&model)?;
    let x = GradedElement::monomial(g.monomial.clone(), 1, args.p);
    let bx = bockstein(&x, &model)?;
    out.set("x", json!(x.render()));
    out.set("beta_x", json!(bx.render()));
    if args.r == 1 {
        let expected = GradedElement::monomial(
            lietype::invariants::MonomialKey::new(vec![false], vec![args.p - 1]),
            1,
            args.p,
        );
        out.claim(Claim::equal(
            "β(ab^(p−2)) = b^(p−1)",
            "bockstein-generator",
            expected.render(),
            bx.render(),
        ));
    }
    out.claim(Claim::holds(
        "β(x) is nonzero and both x and β(x) are invariant",
        "bockstein-generator",
        !bx.is_zero() && x.is_invariant(&model) && bx.is_invariant(&model),
    ));
    let zero = bockstein_square_vanishing(&model, 100, BOCKSTEIN_SEED + args.p as u64)?;
    out.claim(Claim::equal(
        "β∘β vanishes on seeded random elements",
        "bockstein-square",
        100,
        zero,
    ));
    Ok(out)
}

fn root_action(args: &GroupArgs, limits: Limits) -> lietype::Result<Output> {
    let g = group(args, limits)?;
    let f = g.field();
    let mut out = group_output("root-action", args);
    let check = cross_check(&g)?;
    let rows: Vec<Value> = check
        .entries
        .iter()
        .map(|e| {
            json!({
                "root": e.report.label,
                "image": e.report.image.iter().map(|&c| f.display(f.element(c))).collect::<Vec<_>>(),
                "index": e.report.index,
                "expected_index": e.expected_index,
                "weight_divisibility": e.weight_divisibility,
                "predicted_divisors": e.report.predicted_divisors,
            })
        })
        .collect();
    out.set("group", json!(g.name()));
    out.set("roots", Value::Array(rows));
    for e in &check.entries {
        out.claim(Claim::new(
            format!("index of the torus image on X_{}", e.report.label),
            "root-action-index",
            e.expected_index,
            e.report.index,
            e.pass,
        ));
    }
    Ok(out)
}

fn verify_all(limits: Limits) -> lietype::Result<Output> {
    let mut out = Output::new("verify-all").param("budget", limits.elements);
    let outcomes = run_all(limits)?;
    let mut summary = Map::new();
    for o in &outcomes {
        summary.insert(
            format!("{:02}", o.number),
            json!({"title": CRITERIA[o.number - 1], "pass": o.pass(), "claims": o.claims.len()}),
        );
        for c in &o.claims {
            let mut c = c.clone();
            c.description = format!("[{}] {}", o.number, c.description);
            out.claim(c);
        }
    }
    out.set("criteria", Value::Object(summary));
    Ok(out)
}

fn to_json(out: &Output, elapsed_ms: Option<u64>) -> Value {
    let mut report = out.report.clone();
    report.elapsed_ms = elapsed_ms;
    let mut v = serde_json::to_value(&report).expect("report serializes");
    v["data"] = Value::Object(out.data.clone());
    v
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_table(out: &Output, elapsed_ms: Option<u64>) -> String {
    let mut s = format!("command: {}\n", out.report.command);
    for (k, v) in &out.report.parameters {
        s.push_str(&format!("  {k} = {v}\n"));
    }
    if !out.data.is_empty() {
        s.push_str("data:\n");
        for (k, v) in &out.data {
            match v {
                Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
                    s.push_str(&format!("  {k}:\n"));
                    for item in items {
                        s.push_str(&format!("    {}\n", item));
                    }
                }
                _ => s.push_str(&format!("  {k}: {}\n", compact(v))),
            }
        }
    }
    s.push_str("claims:\n");
    let width = out
        .report
        .claims
        .iter()
        .map(|c| c.statement.len())
        .max()
        .unwrap_or(0);
    for c in &out.report.claims {
        s.push_str(&format!(
            "  {} {:width$}  {}: expected {}, computed {}\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.statement,
            c.description,
            c.expected,
            c.computed,
        ));
    }
    s.push_str(&format!(
        "result: {}\n",
        if out.report.passed() { "PASS" } else { "FAIL" }
    ));
    if let Some(ms) = elapsed_ms {
        s.push_str(&format!("elapsed_ms: {ms}\n"));
    }
    s
}

fn run(cli: &Cli) -> lietype::Result<Output> {
    let limits = Limits::with_element_bound(cli.budget);
    match &cli.command {
        Command::FieldInfo { field, modulus } => field_info(field, modulus.as_deref()),
        Command::RootSystem { dynkin_type, rank } => root_system(*dynkin_type, *rank),
        Command::Divisibility {
            dynkin_type,
            rank,
            lattice,
        } => divisibility(*dynkin_type, *rank, *lattice),
        Command::Exponent(a) => exponent(a, limits),
        Command::RegularSubgroup(a) => regular_subgroup(a, limits),
        Command::FixedFlags(a) => fixed(a, limits),
        Command::Orbits(a) => orbits(a, limits),
        Command::Invariants {
            field,
            index,
            max_degree,
        } => invariants(field, *index, *max_degree),
        Command::FirstDegree { field, index } => first_degree(field, *index),
        Command::Bockstein { field } => bockstein_cmd(field),
        Command::RootAction(a) => root_action(a, limits),
        Command::VerifyAll => verify_all(limits),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            match e {
                Error::NotConstructed(msg) => eprintln!("not constructed: {msg}"),
                e => eprintln!("error: {e}"),
            }
            return ExitCode::from(2);
        }
    };
    let elapsed = cli.timing.then(|| start.elapsed().as_millis() as u64);
    match cli.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&to_json(&out, elapsed)).expect("json output")
        ),
        Format::Table => print!("{}", render_table(&out, elapsed)),
    }
    if out.report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
