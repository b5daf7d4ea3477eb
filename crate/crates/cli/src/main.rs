use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use fsgkit::codes_lattices as cl;
use fsgkit::division_algebras::{self as da, Algebra};
use fsgkit::finite_field::{FieldOp, FieldSpec, Operand};
use fsgkit::group_zoo::{self as zoo, Family};
use fsgkit::matrix_group::{self as mg, FamilyOrderQuery, LieFamily, ProjectiveVariant};
use fsgkit::moonshine;
use fsgkit::perm_group::{PermGroup, Permutation};
use fsgkit::{sporadic_data, verify, Error, ErrorKind, Limits};

#[derive(Parser)]
#[command(name = "fsgkit", version, about = "Finite groups, fields, codes, lattices and q-series")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Arithmetic in F_q.
    Field(FieldArgs),
    /// A named or generated permutation group.
    Group(GroupArgs),
    /// Catalog, abelian classification, automorphisms, products.
    Zoo(ZooArgs),
    /// Character table of a small group.
    Chartab(ChartabArgs),
    /// Order formula for a Lie-type family.
    Orders(OrdersArgs),
    /// Simple groups up to an order bound.
    Census(CensusArgs),
    /// The binary Golay code and the Mathieu chain.
    Golay(GolayArgs),
    /// Leech lattice minimal vectors and theta series.
    Leech(LeechArgs),
    /// q-series and Monster identities.
    Moonshine(MoonshineArgs),
    /// Quaternion and octonion arithmetic.
    Algebra(AlgebraArgs),
    /// Sporadic group orders.
    Sporadic(SporadicArgs),
    /// Run every acceptance check.
    VerifyAll(VerifyArgs),
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// add, sub, mul, neg, inv, pow or frobenius.
    #[arg(long)]
    op: Option<String>,
    /// Element index (or comma-separated coefficients, constant first).
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    exponent: Option<i64>,
}

#[derive(Args)]
struct GroupArgs {
    /// Family name: cyclic, dihedral, dicyclic, clifford, clifford_even, sym, alt, V, Q, frobenius21, elementary_abelian.
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    /// Generators in cycle notation separated by ';', on points 0..degree.
    #[arg(long)]
    gens: Option<String>,
    #[arg(long)]
    degree: Option<usize>,
    /// Classes, center, derived subgroup and simplicity.
    #[arg(long)]
    report: bool,
    /// PGL or PSL acting on projective space; needs --n and --q.
    #[arg(long)]
    projective: Option<String>,
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args)]
struct ZooArgs {
    #[arg(long)]
    catalog: bool,
    /// List abelian groups of this order.
    #[arg(long)]
    abelian: Option<u64>,
    /// Automorphism group of a family spec such as dihedral:4.
    #[arg(long)]
    aut: Option<String>,
    /// Holomorph of an abelian family spec.
    #[arg(long)]
    holomorph: Option<String>,
    /// Nonabelian group of order p*q, given as "p,q".
    #[arg(long)]
    pq: Option<String>,
}

#[derive(Args)]
struct ChartabArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args)]
struct OrdersArgs {
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long)]
    q: u64,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, default_value_t = 10000)]
    bound: u64,
}

#[derive(Args)]
struct GolayArgs {
    /// Also list every codeword as a 24-bit hex string.
    #[arg(long)]
    words: bool,
    #[arg(long)]
    mathieu: bool,
}

#[derive(Args)]
struct LeechArgs {
    #[arg(long, default_value_t = 4)]
    theta: usize,
}

#[derive(Args)]
struct MoonshineArgs {
    #[arg(long)]
    j: bool,
    #[arg(long)]
    cube_root: bool,
    #[arg(long)]
    delta: bool,
    #[arg(long, default_value_t = 3)]
    terms: usize,
    #[arg(long)]
    identities: bool,
    #[arg(long)]
    monster: bool,
    #[arg(long)]
    squares: bool,
}

#[derive(Args)]
struct AlgebraArgs {
    /// H or O.
    #[arg(long)]
    algebra: String,
    /// mul, conj or probe.
    #[arg(long, default_value = "mul")]
    op: String,
    /// Comma-separated rational coordinates.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = da::DEFAULT_PROBE_SEED)]
    seed: u64,
}

#[derive(Args)]
struct SporadicArgs {
    #[arg(long)]
    symbol: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run a single check by number.
    #[arg(long)]
    only: Option<u8>,
}

type Res = std::result::Result<Value, Error>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// JSON numbers become decimal strings so no reader truncates them.
fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, v) in o {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|x| x.is_object()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
                }
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object()) => {
            for (i, x) in a.iter().enumerate() {
                out.push_str(&format!("{pad}- [{i}]\n"));
                render_text(x, indent + 1, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn parse_family(name: &str, n: Option<u32>) -> Result<Family, Error> {
    let spec = match n {
        Some(n) => format!("{name}:{n}"),
        None => name.to_string(),
    };
    spec.parse()
}

fn parse_element(spec: &FieldSpec, text: &str) -> Result<fsgkit::finite_field::FieldElement, Error> {
    if text.contains(',') {
        let coeffs = text
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Invalid(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        spec.element(&coeffs)
    } else {
        let i: u64 = text.trim().parse().map_err(|_| Error::Invalid(format!("bad element index {text:?}")))?;
        if i >= spec.q() {
            return Err(Error::Invalid(format!("element index {i} is not below q = {}", spec.q())));
        }
        Ok(spec.from_index(i))
    }
}

fn field(args: &FieldArgs, limits: &Limits) -> Res {
    let spec = FieldSpec::with_limit(args.p, args.f, limits.max_field_size)?;
    let Some(op) = &args.op else {
        let g = spec.multiplicative_generator();
        return Ok(json!({
            "p": spec.p(),
            "f": spec.f(),
            "q": spec.q(),
            "modulus": spec.modulus(),
            "generator": g.coeffs(),
            "generator_index": spec.index(&g),
            "frobenius_order": spec.frobenius_order(),
        }));
    };
    let a = parse_element(&spec, args.a.as_deref().ok_or(Error::Invalid("--a is required".into()))?)?;
    let result = match op.as_str() {
        "frobenius" => spec.frobenius(&a),
        _ => {
            let fop = match op.as_str() {
                "add" => FieldOp::Add,
                "sub" => FieldOp::Sub,
                "mul" => FieldOp::Mul,
                "neg" => FieldOp::Neg,
                "inv" => FieldOp::Inv,
                "pow" => FieldOp::Pow,
                other => return Err(Error::Invalid(format!("unknown field operation {other:?}"))),
            };
            let operand = match (fop, &args.b, args.exponent) {
                (FieldOp::Pow, _, Some(e)) => Operand::Exponent(e),
                (FieldOp::Pow, _, None) => return Err(Error::Invalid("pow needs --exponent".into())),
                (FieldOp::Neg | FieldOp::Inv, _, _) => Operand::None,
                (_, Some(b), _) => Operand::Element(parse_element(&spec, b)?),
                (_, None, _) => return Err(Error::Invalid(format!("{op} needs --b"))),
            };
            spec.apply(fop, &a, &operand)?
        }
    };
    Ok(json!({ "q": spec.q(), "op": op, "result": result.coeffs(), "index": spec.index(&result) }))
}

fn build_group(args: &GroupArgs, limits: &Limits) -> Result<PermGroup, Error> {
    if let Some(kind) = &args.projective {
        let variant: ProjectiveVariant = kind.parse()?;
        let q = args.q.ok_or(Error::Invalid("--projective needs --q".into()))?;
        let n = args.n.ok_or(Error::Invalid("--projective needs --n".into()))? as usize;
        let (p, f) = fsgkit::numtheory::prime_power(q).ok_or(Error::Invalid(format!("{q} is not a prime power")))?;
        let spec = FieldSpec::with_limit(p, f, limits.max_field_size)?;
        return mg::projective_action_with(variant, n, &spec, limits);
    }
    if let Some(text) = &args.gens {
        let degree = args.degree.ok_or(Error::Invalid("--gens needs --degree".into()))?;
        let gens = text.split(';').map(|g| Permutation::parse_cycles(degree, g)).collect::<Result<Vec<_>, _>>()?;
        return PermGroup::new(degree, gens);
    }
    let name = args.name.as_deref().ok_or(Error::Invalid("give --name, --gens or --projective".into()))?;
    zoo::construct_named(parse_family(name, args.n)?)
}

fn group(args: &GroupArgs, limits: &Limits) -> Res {
    let g = build_group(args, limits)?.with_limits(*limits);
    let mut out = json!({
        "degree": g.degree(),
        "order": g.order().to_string(),
        "generators": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "base": g.base(),
        "orbit_lengths": g.orbit_lengths(),
        "transitivity": to_value(&g.transitivity_degree()),
    });
    if args.report {
        let classes = g.conjugacy_classes()?;
        let s = g.structure_report()?;
        let o = out.as_object_mut().unwrap();
        o.insert("classes".into(), to_value(&classes.class_sizes));
        o.insert("class_orders".into(), to_value(&classes.class_rep_orders));
        o.insert("simple".into(), json!(g.is_simple()?));
        o.insert("abelian".into(), json!(g.is_abelian()));
        o.insert("structure".into(), to_value(&s));
        o.insert("element_orders".into(), to_value(&g.element_order_histogram()?));
    }
    Ok(out)
}

fn zoo_cmd(args: &ZooArgs, limits: &Limits) -> Res {
    let family = |s: &str| -> Result<PermGroup, Error> { Ok(zoo::construct_named(s.parse()?)?.with_limits(*limits)) };
    if args.catalog {
        let cat = zoo::small_group_catalog()?;
        return Ok(zoo::catalog_json(&cat));
    }
    if let Some(n) = args.abelian {
        let types = zoo::enumerate_abelian_types(n)?;
        return Ok(json!({
            "order": n,
            "count": zoo::count_abelian_groups(n)?.to_string(),
            "groups": types.iter().map(|t| json!({
                "name": t.to_string(),
                "invariant_factors": t.invariant_factors(),
            })).collect::<Vec<_>>(),
        }));
    }
    if let Some(spec) = &args.aut {
        let d = zoo::automorphism_group(&family(spec)?)?;
        return Ok(json!({
            "group": spec,
            "aut_order": d.aut_order,
            "inn_order": d.inn_order,
            "out_order": d.out_order,
        }));
    }
    if let Some(spec) = &args.holomorph {
        let h = zoo::holomorph(&family(spec)?)?.with_limits(*limits);
        let classes = h.conjugacy_classes()?;
        return Ok(json!({
            "group": spec,
            "order": h.order().to_string(),
            "degree": h.degree(),
            "classes": classes.class_sizes,
        }));
    }
    if let Some(pq) = &args.pq {
        let parts: Vec<u64> = pq
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::Invalid(format!("bad number {t:?}"))))
            .collect::<Result<_, _>>()?;
        let [p, q] = parts[..] else {
            return Err(Error::Invalid("--pq takes two numbers \"p,q\"".into()));
        };
        let g = zoo::nonabelian_pq(p, q)?.with_limits(*limits);
        return Ok(json!({
            "p": p,
            "q": q,
            "order": g.order().to_string(),
            "classes": g.conjugacy_classes()?.class_sizes,
        }));
    }
    Err(Error::Invalid("give one of --catalog, --abelian, --aut, --holomorph, --pq".into()))
}

fn chartab(args: &ChartabArgs, limits: &Limits) -> Res {
    let g = zoo::construct_named(parse_family(&args.name, args.n)?)?.with_limits(*limits);
    let t = zoo::character_table(&g)?;
    t.check_orthogonality()?;
    Ok(json!({
        "order": t.group_order,
        "class_sizes": t.class_sizes,
        "class_orders": t.class_rep_orders,
        "degrees": t.degrees,
        "root_of_unity_order": t.root_of_unity_order,
        "rows": t.values.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    }))
}

fn orders(args: &OrdersArgs) -> Res {
    let family: LieFamily = args.family.parse()?;
    let r = mg::order_formula(FamilyOrderQuery { family, n: args.n, q: args.q })?;
    Ok(to_value(&r))
}

fn census(args: &CensusArgs) -> Res {
    let c = mg::simple_census(args.bound)?;
    Ok(json!({ "bound": args.bound, "count": c.len(), "entries": to_value(&c) }))
}

fn golay(args: &GolayArgs) -> Res {
    let code = cl::build_golay()?;
    let mut out = json!({
        "length": code.length(),
        "dimension": code.dimension(),
        "min_weight": code.min_weight(),
        "self_dual": code.is_self_dual(),
        "generators": code.generators().iter().map(|&w| cl::word_hex(w)).collect::<Vec<_>>(),
        "weight_distribution": to_value(&code.weight_distribution()),
        "steiner": to_value(&cl::octad_steiner_check(&code)),
    });
    let o = out.as_object_mut().unwrap();
    if args.words {
        o.insert("codewords".into(), json!(code.codewords().iter().map(|&w| cl::word_hex(w)).collect::<Vec<_>>()));
    }
    if args.mathieu {
        o.insert("mathieu".into(), to_value(&cl::mathieu_m24(&code)?));
    }
    Ok(out)
}

fn leech(args: &LeechArgs) -> Res {
    let code = cl::build_golay()?;
    let shapes = cl::leech_minimal_vectors(&code);
    let check = cl::leech_theta_check(&code, args.theta)?;
    Ok(json!({
        "shapes": to_value(&shapes),
        "kissing_number": shapes.iter().map(|s| s.count).sum::<u64>(),
        "theta": to_value(&check.theta),
        "theta_matches_shapes": check.matches_kissing_number,
        "dodecad_vectors": check.dodecad_vectors,
    }))
}

fn moonshine_cmd(args: &MoonshineArgs, limits: &Limits) -> Res {
    let mut out = serde_json::Map::new();
    let coeffs = |s: &moonshine::IntegerSeries| s.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>();
    let nothing = !(args.j || args.cube_root || args.delta || args.identities || args.monster || args.squares);
    if args.j || nothing {
        let j = moonshine::j_expansion(args.terms)?;
        out.insert("j".into(), json!({ "leading_exponent": j.leading_exponent(), "coefficients": coeffs(&j) }));
    }
    if args.cube_root {
        let s = moonshine::j_cube_root(args.terms)?;
        out.insert("cube_root".into(), json!({ "leading_exponent": "-1/3", "coefficients": coeffs(&s) }));
    }
    if args.delta {
        let d = moonshine::delta_expansion_with(args.terms, limits)?;
        out.insert("delta".into(), json!({ "leading_exponent": d.leading_exponent(), "coefficients": coeffs(&d) }));
    }
    if args.identities || nothing {
        out.insert("identities".into(), to_value(&moonshine::moonshine_decompositions()?));
    }
    if args.monster {
        let m = moonshine::monster_order();
        out.insert(
            "monster".into(),
            json!({
                "order": m.to_string(),
                "digits": m.to_string().len(),
                "data": to_value(&moonshine::monster_data()),
            }),
        );
    }
    if args.squares {
        out.insert("sum_of_squares".into(), to_value(&moonshine::sum_of_squares_check(1_000_000)));
    }
    Ok(Value::Object(out))
}

fn algebra(args: &AlgebraArgs) -> Res {
    let alg: Algebra = args.algebra.parse()?;
    let need = |x: &Option<String>, name: &str| -> Result<da::Element, Error> {
        da::parse_element(alg, x.as_deref().ok_or(Error::Invalid(format!("--{name} is required")))?)
    };
    match args.op.as_str() {
        "mul" => {
            let (a, b) = (need(&args.a, "a")?, need(&args.b, "b")?);
            Ok(json!({ "a": to_value(&a), "b": to_value(&b), "product": to_value(&a.mul(&b)?) }))
        }
        "conj" => Ok(to_value(&da::conj_norm_inverse(&need(&args.a, "a")?)?)),
        "probe" => Ok(to_value(&da::associativity_probe(alg, args.samples, args.seed)?)),
        other => Err(Error::Invalid(format!("unknown algebra operation {other:?}; expected mul, conj or probe"))),
    }
}

fn sporadic(args: &SporadicArgs) -> Res {
    match &args.symbol {
        Some(s) => {
            let e = sporadic_data::sporadic_table()
                .into_iter()
                .find(|e| e.symbol.eq_ignore_ascii_case(s))
                .ok_or_else(|| Error::Invalid(format!("unknown sporadic symbol {s:?}")))?;
            Ok(to_value(&e))
        }
        None => Ok(sporadic_data::sporadic_json()),
    }
}

fn verify_all(args: &VerifyArgs) -> Result<(Value, String, bool), Error> {
    let outcomes = match args.only {
        Some(id) => vec![verify::run(id).ok_or(Error::Invalid(format!("no check numbered {id}")))?],
        None => verify::run_all(),
    };
    let ok = outcomes.iter().all(|o| o.passed);
    let text: String = outcomes.iter().map(|o| verify::format_line(o) + "\n").collect();
    Ok((json!({ "passed": ok, "checks": to_value(&outcomes) }), text, ok))
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        ErrorKind::Validation => 2,
        ErrorKind::Resource => 3,
        ErrorKind::Defect => 70,
    }
}

fn write_out(s: &str) {
    // A closed pipe downstream is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit(format: Format, v: Value) {
    let v = stringify_numbers(v);
    match format {
        Format::Json => write_out(&(serde_json::to_string_pretty(&v).expect("serializable") + "\n")),
        Format::Text => {
            let mut s = String::new();
            render_text(&v, 0, &mut s);
            write_out(&s);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    let result = match &cli.command {
        Command::Field(a) => field(a, &limits),
        Command::Group(a) => group(a, &limits),
        Command::Zoo(a) => zoo_cmd(a, &limits),
        Command::Chartab(a) => chartab(a, &limits),
        Command::Orders(a) => orders(a),
        Command::Census(a) => census(a),
        Command::Golay(a) => golay(a),
        Command::Leech(a) => leech(a),
        Command::Moonshine(a) => moonshine_cmd(a, &limits),
        Command::Algebra(a) => algebra(a),
        Command::Sporadic(a) => sporadic(a),
        Command::VerifyAll(a) => match verify_all(a) {
            Ok((v, text, ok)) => {
                match cli.format {
                    Format::Json => emit(Format::Json, v),
                    Format::Text => write_out(&text),
                }
                return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
            }
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(v) => {
            emit(cli.format, v);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
