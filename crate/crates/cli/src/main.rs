//! Command-line front end: parse polynomial inputs, dispatch to the
//! resultant constructions and intersection detectors, emit text or JSON.

use std::collections::BTreeMap;
use std::process::ExitCode;

use detres::error::Error;
use detres::grading::GradedMap;
use detres::intersect::{
    self, CurveFamily, DetectOptions, DetectorKind, IntersectionCondition,
};
use detres::poly::{is_prime, parse_poly, Field, MultiDegree, MultiPoly, Scalar, SpaceBuilder};
use detres::resultants::{self, ResultantOutput};
use detres::Space;

const USAGE: &str = "\
detres - exact resultants and space-curve intersection conditions

USAGE:
  detres res sylvester     --vars \"s,t\" [OPTIONS] F0 F1
  detres res dixon         --vars \"s,t | u,v\" [OPTIONS] F0 F1 F2
  detres res det-sylvester --vars \"s,t\" --rows N [--k \"k1,..,kN\"] [OPTIONS] E11 .. E(N,N+1)
  detres res det-dixon     --vars \"s,t | u,v\" --rows N [OPTIONS] E11 .. E(N,N+2)
  detres res curves        --vars \"s,t | u,v\" [OPTIONS] F0 F1 F2 F3 G0 G1 G2 G3
  detres intersect pp      --vars \"s,t | u,v\" --params \"l,m\" [OPTIONS] F0..F3 G0..G3
  detres intersect ii      --vars \"X,Y,Z,T\" --params \"l,m\" --split K [OPTIONS] H1 .. Hn
  detres intersect pi      --vars \"s,t | X,Y,Z,T\" --params \"l,m\" [--hb N] [OPTIONS] F0..F3 H0 H1
  detres eval              --vars \"...\" [--params \"...\"] [--at l=0,m=1/2] POLY

OPTIONS:
  --vars \"a,b | c,d\"   geometric variable blocks, separated by `|`
  --params \"l,m\"       parameter variables (the condition lives in these)
  --field Q              compute over the prime field F_Q instead of Q
  --at l=0,m=1/2         bind parameters and evaluate the condition
  --direct               with --at: substitute first, then test the scalar matrix
  --method NAME          intersect pp: `curves` routes through the curve-pair
                         resultant; res det-sylvester: `gcd-minors` replaces
                         the determinant quotient by a minor gcd
  --minors N             stability budget for minor-gcd sampling (default 3)
  --twist \"m\" | \"p,q\"  twist override; computes a determinant of a complex
  --json                 JSON output
  --dump-matrix          include the constructed matrices in the output
  --rows N               row count for matrix-valued inputs
  --k \"k1,..\" --d \"d1,..\"  row / column twists (defaults: k = 0, d inferred)
  --split K              intersect ii: first K equations form the first family
  --hb N                 intersect pi: implicit side is an N x (N+1) matrix

EXIT CODES: 0 success, 1 usage error, 2 mathematical precondition failure
";

enum CliError {
    Usage(String),
    Math(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::UnknownVariable(_) => CliError::Usage(e.to_string()),
            other => CliError::Math(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Default)]
struct Invocation {
    vars: Option<String>,
    params: Option<String>,
    field: Option<u64>,
    json: bool,
    dump_matrix: bool,
    direct: bool,
    minors: Option<usize>,
    method: Option<String>,
    twist: Option<String>,
    at: Option<String>,
    rows: Option<usize>,
    k: Option<String>,
    d: Option<String>,
    split: Option<usize>,
    hb: Option<usize>,
    positional: Vec<String>,
}

fn parse_args(args: &[String]) -> CliResult<Invocation> {
    let mut inv = Invocation::default();
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        let (flag, inline_value) = match arg.split_once('=') {
            Some((f, v)) if f.starts_with("--") => (f.to_string(), Some(v.to_string())),
            _ => (arg.clone(), None),
        };
        let take_value = |i: &mut usize| -> CliResult<String> {
            if let Some(v) = &inline_value {
                return Ok(v.clone());
            }
            *i += 1;
            args.get(*i)
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("{flag} expects a value")))
        };
        match flag.as_str() {
            "--vars" => inv.vars = Some(take_value(&mut i)?),
            "--params" => inv.params = Some(take_value(&mut i)?),
            "--field" => {
                let v = take_value(&mut i)?;
                let q: u64 = v
                    .parse()
                    .map_err(|_| CliError::Usage(format!("--field expects an integer, got `{v}`")))?;
                if !is_prime(q) {
                    return usage(format!("--field {q}: modulus must be prime"));
                }
                inv.field = Some(q);
            }
            "--json" => inv.json = true,
            "--dump-matrix" => inv.dump_matrix = true,
            "--direct" => inv.direct = true,
            "--minors" => {
                let v = take_value(&mut i)?;
                inv.minors = Some(v.parse().map_err(|_| {
                    CliError::Usage(format!("--minors expects an integer, got `{v}`"))
                })?);
            }
            "--method" => inv.method = Some(take_value(&mut i)?),
            "--twist" => inv.twist = Some(take_value(&mut i)?),
            "--at" => inv.at = Some(take_value(&mut i)?),
            "--rows" => {
                let v = take_value(&mut i)?;
                inv.rows = Some(v.parse().map_err(|_| {
                    CliError::Usage(format!("--rows expects an integer, got `{v}`"))
                })?);
            }
            "--k" => inv.k = Some(take_value(&mut i)?),
            "--d" => inv.d = Some(take_value(&mut i)?),
            "--split" => {
                let v = take_value(&mut i)?;
                inv.split = Some(v.parse().map_err(|_| {
                    CliError::Usage(format!("--split expects an integer, got `{v}`"))
                })?);
            }
            "--hb" => {
                let v = take_value(&mut i)?;
                inv.hb = Some(v.parse().map_err(|_| {
                    CliError::Usage(format!("--hb expects an integer, got `{v}`"))
                })?);
            }
            _ if flag.starts_with("--") => return usage(format!("unknown flag `{flag}`")),
            _ => inv.positional.push(arg.clone()),
        }
        i += 1;
    }
    Ok(inv)
}

impl Invocation {
    fn space(&self) -> CliResult<Space> {
        let vars = self
            .vars
            .as_ref()
            .ok_or_else(|| CliError::Usage("--vars is required".into()))?;
        let mut builder = SpaceBuilder::new();
        for (i, block) in vars.split('|').enumerate() {
            let names: Vec<String> = block
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if names.is_empty() {
                return usage("empty variable block in --vars");
            }
            builder = builder.geometric(&format!("g{}", i + 1), names);
        }
        if let Some(params) = &self.params {
            let names: Vec<String> = params
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if !names.is_empty() {
                builder = builder.parameter("params", names);
            }
        }
        Ok(builder.build()?)
    }

    fn coefficient_field(&self) -> Field {
        match self.field {
            Some(q) => Field::Prime(q),
            None => Field::Rational,
        }
    }

    fn polys(&self, space: &Space, expected: usize, what: &str) -> CliResult<Vec<MultiPoly>> {
        if self.positional.len() != expected {
            return usage(format!(
                "{what}: expected {expected} polynomial argument(s), found {}",
                self.positional.len()
            ));
        }
        let field = self.coefficient_field();
        self.positional
            .iter()
            .map(|s| parse_poly(s, space, field).map_err(CliError::from))
            .collect()
    }

    fn minors_budget(&self) -> usize {
        self.minors.unwrap_or(3)
    }

    fn at_values(&self, space: &Space) -> CliResult<Option<BTreeMap<String, Scalar>>> {
        let Some(spec) = &self.at else { return Ok(None) };
        let field = self.coefficient_field();
        let mut values = BTreeMap::new();
        for binding in spec.split(',') {
            let Some((name, value)) = binding.split_once('=') else {
                return usage(format!("--at: expected name=value, got `{binding}`"));
            };
            let name = name.trim();
            if space.var_index(name).is_none() {
                return usage(format!("--at: unknown variable `{name}`"));
            }
            let poly = parse_poly(value.trim(), space, field)?;
            let Some(c) = poly.constant_value() else {
                return usage(format!("--at: `{value}` is not a constant"));
            };
            values.insert(name.to_string(), c);
        }
        Ok(Some(values))
    }

    fn twist_degrees(&self) -> CliResult<Option<Vec<i64>>> {
        let Some(spec) = &self.twist else { return Ok(None) };
        let parts: Result<Vec<i64>, _> = spec.split(',').map(|s| s.trim().parse()).collect();
        match parts {
            Ok(v) => Ok(Some(v)),
            Err(_) => usage(format!("--twist expects integers, got `{spec}`")),
        }
    }
}

fn print_resultant(inv: &Invocation, out: &ResultantOutput) -> CliResult<()> {
    if let Some(values) = inv.at_values(out.condition.space())? {
        let v = out.condition.evaluate(&values)?;
        if inv.json {
            println!(
                "{{\"value\":\"{v}\",\"zero\":{}}}",
                if v.is_zero() { "true" } else { "false" }
            );
        } else {
            println!("{v}");
        }
        return Ok(());
    }
    if inv.json {
        println!("{}", out.to_json(inv.dump_matrix));
        return Ok(());
    }
    println!("{}", out.condition);
    if inv.dump_matrix {
        for lm in &out.matrices {
            let (r, c) = lm.matrix.shape();
            println!("matrix {} ({r}x{c})", lm.label);
            if !lm.row_labels.is_empty() {
                println!("  rows: {}", lm.row_labels.join(", "));
            }
            if !lm.col_labels.is_empty() {
                println!("  cols: {}", lm.col_labels.join(", "));
            }
            for i in 0..r {
                let row: Vec<String> = (0..c).map(|j| lm.matrix.get(i, j).to_string()).collect();
                println!("  [{}]", row.join(", "));
            }
        }
    }
    Ok(())
}

fn print_condition(
    inv: &Invocation,
    cond: &IntersectionCondition,
    direct: Option<bool>,
) -> CliResult<()> {
    if let Some(values) = inv.at_values(cond.condition.space())? {
        let intersecting = match direct {
            Some(flag) => flag,
            None => intersect::evaluate_condition(&cond.condition, &values)?.is_zero(),
        };
        if inv.json {
            let value = if direct.is_some() {
                String::new()
            } else {
                intersect::evaluate_condition(&cond.condition, &values)?.to_string()
            };
            println!(
                "{{\"value\":\"{value}\",\"intersecting\":{}}}",
                if intersecting { "true" } else { "false" }
            );
        } else {
            println!("{}", if intersecting { "intersecting" } else { "disjoint" });
        }
        return Ok(());
    }
    if inv.json {
        println!("{}", cond.to_json());
    } else {
        println!("{}", cond.condition);
    }
    Ok(())
}

/// Column degrees of a matrix command: explicit `--d`, or inferred from the
/// first nonzero entry of each column plus the row twist.
fn graded_map_from_args(
    inv: &Invocation,
    space: &Space,
    rows: usize,
    cols: usize,
) -> CliResult<GradedMap> {
    let field = inv.coefficient_field();
    if inv.positional.len() != rows * cols {
        return usage(format!(
            "expected {rows}x{cols} = {} entries, found {}",
            rows * cols,
            inv.positional.len()
        ));
    }
    let entries: Vec<MultiPoly> = inv
        .positional
        .iter()
        .map(|s| parse_poly(s, space, field).map_err(CliError::from))
        .collect::<CliResult<Vec<_>>>()?;
    let r = space.num_geometric_blocks();
    // Row twists: --k scalars apply on the single block the entries live in;
    // the default is zero and needs no block information.
    let entry_block = || -> CliResult<usize> {
        Ok(entries
            .iter()
            .find(|e| !e.is_zero())
            .ok_or(CliError::Math(Error::ZeroInput))?
            .single_block_degree()
            .map_err(CliError::from)?
            .0)
    };
    let row_degrees: Vec<MultiDegree> = match &inv.k {
        Some(spec) => {
            let parsed: Result<Vec<i64>, _> = spec.split(',').map(|s| s.trim().parse()).collect();
            let block = entry_block()?;
            match parsed {
                Ok(v) if v.len() == rows => v
                    .into_iter()
                    .map(|kv| {
                        let mut d = MultiDegree::zero(r);
                        d.0[block] = kv;
                        d
                    })
                    .collect(),
                Ok(_) => return usage("--k must list one integer per row"),
                Err(_) => return usage("--k expects integers"),
            }
        }
        None => vec![MultiDegree::zero(r); rows],
    };
    let col_degrees: Vec<MultiDegree> = match &inv.d {
        Some(spec) => {
            let parsed: Result<Vec<i64>, _> = spec.split(',').map(|s| s.trim().parse()).collect();
            let block = entry_block()?;
            match parsed {
                Ok(v) if v.len() == cols => v
                    .into_iter()
                    .map(|dv| {
                        let mut d = MultiDegree::zero(r);
                        d.0[block] = dv;
                        d
                    })
                    .collect(),
                Ok(_) => return usage("--d must list one integer per column"),
                Err(_) => return usage("--d expects integers"),
            }
        }
        None => {
            let mut cds = Vec::with_capacity(cols);
            for j in 0..cols {
                let mut found = None;
                for i in 0..rows {
                    let e = &entries[i * cols + j];
                    if !e.is_zero() {
                        let deg = e.geometric_multidegree().map_err(CliError::from)?;
                        found = Some(deg.add(&row_degrees[i]));
                        break;
                    }
                }
                match found {
                    Some(d) => cds.push(d),
                    None => return usage(format!("column {j} is zero; supply --d")),
                }
            }
            cds
        }
    };
    let rows_data: Vec<Vec<MultiPoly>> = (0..rows)
        .map(|i| entries[i * cols..(i + 1) * cols].to_vec())
        .collect();
    Ok(GradedMap::new(space, field, row_degrees, col_degrees, rows_data)?)
}

fn cmd_res(kind: &str, inv: &Invocation) -> CliResult<()> {
    let space = inv.space()?;
    let field = inv.coefficient_field();
    let twist = inv.twist_degrees()?;
    let out = match kind {
        "sylvester" => {
            let p = inv.polys(&space, 2, "res sylvester")?;
            match &twist {
                None => resultants::sylvester(&p[0], &p[1])?,
                Some(tv) => {
                    let m = scalar_twist_on_form(&space, &p[0], tv)?;
                    resultants::koszul_determinant(&p, &m)?
                }
            }
        }
        "dixon" => {
            let p = inv.polys(&space, 3, "res dixon")?;
            match &twist {
                None => resultants::dixon(&p[0], &p[1], &p[2])?,
                Some(tv) => {
                    let m = full_twist(&space, tv)?;
                    resultants::koszul_determinant(&p, &m)?
                }
            }
        }
        "det-sylvester" => {
            let rows = inv.rows.ok_or_else(|| CliError::Usage("--rows is required".into()))?;
            let phi = graded_map_from_args(inv, &space, rows, rows + 1)?;
            match (&twist, inv.method.as_deref()) {
                (None, None) => resultants::det_sylvester(&phi)?,
                (None, Some("gcd-minors")) => {
                    resultants::det_sylvester_gcd_minors(&phi, inv.minors_budget())?
                }
                (None, Some(other)) => {
                    return usage(format!("unknown --method `{other}` for det-sylvester"))
                }
                (Some(tv), _) => {
                    let m = full_twist(&space, tv)?;
                    resultants::eagon_northcott_determinant(&phi, &m)?
                }
            }
        }
        "det-dixon" => {
            let rows = inv.rows.ok_or_else(|| CliError::Usage("--rows is required".into()))?;
            let phi = graded_map_from_args(inv, &space, rows, rows + 2)?;
            match &twist {
                None => resultants::det_dixon(&phi)?,
                Some(tv) => {
                    let m = full_twist(&space, tv)?;
                    resultants::eagon_northcott_determinant(&phi, &m)?
                }
            }
        }
        "curves" => {
            let p = inv.polys(&space, 8, "res curves")?;
            let f = [p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()];
            let g = [p[4].clone(), p[5].clone(), p[6].clone(), p[7].clone()];
            match &twist {
                None => resultants::curves_res(&f, &g, inv.minors_budget())?,
                Some(tv) => {
                    let phi = resultants::curves_graded_map(&f, &g)?;
                    let m = full_twist(&space, tv)?;
                    resultants::eagon_northcott_determinant(&phi, &m)?
                }
            }
        }
        other => return usage(format!("unknown resultant `{other}`; see --help")),
    };
    let _ = field;
    print_resultant(inv, &out)
}

/// A twist given as one integer, placed on the block carrying the form.
fn scalar_twist_on_form(space: &Space, form: &MultiPoly, tv: &[i64]) -> CliResult<MultiDegree> {
    let r = space.num_geometric_blocks();
    if tv.len() == r {
        return Ok(MultiDegree(tv.to_vec()));
    }
    if tv.len() != 1 {
        return usage("--twist arity does not match the variable blocks");
    }
    let (block, _) = form.single_block_degree().map_err(CliError::from)?;
    let mut m = MultiDegree::zero(r);
    m.0[block] = tv[0];
    Ok(m)
}

fn full_twist(space: &Space, tv: &[i64]) -> CliResult<MultiDegree> {
    let r = space.num_geometric_blocks();
    if tv.len() != r {
        return usage(format!("--twist expects {r} integer(s) for this space"));
    }
    Ok(MultiDegree(tv.to_vec()))
}

fn cmd_intersect(kind: &str, inv: &Invocation) -> CliResult<()> {
    let space = inv.space()?;
    let mut opts = DetectOptions {
        minors_budget: inv.minors_budget(),
        use_curves_res: false,
    };
    match inv.method.as_deref() {
        None => {}
        Some("curves") => opts.use_curves_res = true,
        Some(other) => return usage(format!("unknown --method `{other}`")),
    }
    match kind {
        "pp" => {
            let p = inv.polys(&space, 8, "intersect pp")?;
            let c = CurveFamily::parametric([p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()])?;
            let d = CurveFamily::parametric([p[4].clone(), p[5].clone(), p[6].clone(), p[7].clone()])?;
            if inv.direct {
                let Some(values) = inv.at_values(&space)? else {
                    return usage("--direct requires --at");
                };
                let hit = intersect::specialize_detect(
                    DetectorKind::ParametricParametric,
                    &c,
                    &d,
                    &values,
                    &opts,
                )?;
                return print_verdict(inv, hit);
            }
            let out = intersect::detect_pp(&c, &d, &opts)?;
            print_condition(inv, &out, None)
        }
        "ii" => {
            let split = inv.split.ok_or_else(|| CliError::Usage("--split is required".into()))?;
            if split == 0 || split >= inv.positional.len() {
                return usage("--split must cut the equation list into two nonempty families");
            }
            let field = inv.coefficient_field();
            let polys: Vec<MultiPoly> = inv
                .positional
                .iter()
                .map(|s| parse_poly(s, &space, field).map_err(CliError::from))
                .collect::<CliResult<Vec<_>>>()?;
            let c = CurveFamily::implicit_list(polys[..split].to_vec())?;
            let d = CurveFamily::implicit_list(polys[split..].to_vec())?;
            if inv.direct {
                let Some(values) = inv.at_values(&space)? else {
                    return usage("--direct requires --at");
                };
                let hit = intersect::specialize_detect(
                    DetectorKind::ImplicitImplicit,
                    &c,
                    &d,
                    &values,
                    &opts,
                )?;
                return print_verdict(inv, hit);
            }
            let out = intersect::detect_ii(&c, &d, &opts)?;
            print_condition(inv, &out, None)
        }
        "pi" => {
            let field = inv.coefficient_field();
            let n_entries = inv.hb.map(|n| n * (n + 1)).unwrap_or(2);
            let expected = 4 + n_entries;
            let p = inv.polys(&space, expected, "intersect pi")?;
            let c = CurveFamily::parametric([p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()])?;
            let d = match inv.hb {
                None => CurveFamily::implicit_list(p[4..].to_vec())?,
                Some(n) => {
                    let sub = Invocation {
                        positional: inv.positional[4..].to_vec(),
                        k: inv.k.clone(),
                        d: inv.d.clone(),
                        field: inv.field,
                        ..Default::default()
                    };
                    let map = graded_map_from_args(&sub, &space, n, n + 1)?;
                    CurveFamily::hilbert_burch(map)?
                }
            };
            let _ = field;
            if inv.direct {
                let Some(values) = inv.at_values(&space)? else {
                    return usage("--direct requires --at");
                };
                let hit = intersect::specialize_detect(
                    DetectorKind::ParametricImplicit,
                    &c,
                    &d,
                    &values,
                    &opts,
                )?;
                return print_verdict(inv, hit);
            }
            let out = intersect::detect_pi(&c, &d, &opts)?;
            print_condition(inv, &out, None)
        }
        other => usage(format!("unknown detector `{other}`; see --help")),
    }
}

fn print_verdict(inv: &Invocation, intersecting: bool) -> CliResult<()> {
    if inv.json {
        println!(
            "{{\"intersecting\":{}}}",
            if intersecting { "true" } else { "false" }
        );
    } else {
        println!("{}", if intersecting { "intersecting" } else { "disjoint" });
    }
    Ok(())
}

fn cmd_eval(inv: &Invocation) -> CliResult<()> {
    let space = inv.space()?;
    let p = inv.polys(&space, 1, "eval")?;
    match inv.at_values(&space)? {
        Some(values) => {
            let v = p[0].evaluate(&values)?;
            if inv.json {
                println!("{{\"value\":\"{v}\"}}");
            } else {
                println!("{v}");
            }
        }
        None => {
            if inv.json {
                println!("{{\"poly\":\"{}\"}}", p[0]);
            } else {
                println!("{}", p[0]);
            }
        }
    }
    Ok(())
}

fn dispatch(args: &[String]) -> CliResult<()> {
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help" {
        print!("{USAGE}");
        return Ok(());
    }
    match args[0].as_str() {
        "res" => {
            let Some(kind) = args.get(1) else {
                return usage("res: missing resultant kind");
            };
            let inv = parse_args(&args[2..])?;
            cmd_res(kind, &inv)
        }
        "intersect" => {
            let Some(kind) = args.get(1) else {
                return usage("intersect: missing detector kind");
            };
            let inv = parse_args(&args[2..])?;
            cmd_intersect(kind, &inv)
        }
        "eval" => {
            let inv = parse_args(&args[1..])?;
            cmd_eval(&inv)
        }
        other => usage(format!("unknown command `{other}`; see --help")),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match dispatch(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `detres --help` for usage");
            ExitCode::from(1)
        }
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
