//! `manyval`: command-line access to matrices, congruences, homomorphisms,
//! entailment and tableaux.
//!
//! Exit codes: 0 affirmative, 1 negative, 2 usage, 3 input, 4 budget.

use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use manyval::algebra::CongruenceViolation;
use manyval::latex::latex_document;
use manyval::semantics::{distribution_table, entails_with, is_aci, DistributionTable};
use manyval::tableau::ProofResult;
use manyval::{
    automorphisms, build_builtin, direct_product, emit_latex_rules, emit_latex_tables, enumerate_congruences, evaluate,
    factor_matrix, find_epimorphisms, find_isomorphism, generate_rules, is_congruence, parse_formula, parse_logic,
    prove_entailment, search_space_stats, serialize_logic, Budget, Congruence, CongruenceOptions, EntailOptions,
    EntailmentVerdict, EpiOptions, Error, Formula, Matrix, Partial, Partition, Valuation, ValueMap, Verdict,
};
use serde_json::{json, Value as Json};

#[derive(Parser)]
#[command(name = "manyval", version, about = "Finite-valued logical matrix workbench")]
struct Cli {
    /// Line-delimited JSON on standard output instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for congruence, epimorphism and entailment searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Time budget in seconds for searches.
    #[arg(long, global = true, env = "MANYVAL_BUDGET_SECS", default_value_t = 600.0)]
    budget: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Claim {
    /// Premise formula; repeatable.
    #[arg(short, long = "premise")]
    p: Vec<String>,
    /// Conclusion formula.
    #[arg(short, long = "conclusion")]
    c: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the values and truth tables.
    Show { matrix: String },
    /// Direct product of two matrices, as .mvl.
    Product {
        left: String,
        right: String,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// List the congruences, one partition per line.
    Congruences {
        matrix: String,
        #[arg(long)]
        include_identity: bool,
        /// Only congruences with this many classes.
        #[arg(long)]
        classes: Option<usize>,
    },
    /// Factor matrix by a congruence, as .mvl.
    Factor {
        matrix: String,
        /// Partition literal `{a,b|c}` or the index of a line of `congruences`.
        #[arg(long)]
        classes: String,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Find an isomorphism.
    Iso { left: String, right: String },
    /// Find epimorphisms from the first matrix onto the second.
    Epi {
        left: String,
        right: String,
        /// One per congruence whose factor matches, instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// List all automorphisms.
    Auto { matrix: String },
    /// Decide an entailment by truth tables.
    Entail {
        matrix: String,
        #[command(flatten)]
        claim: Claim,
    },
    /// Decide whether a formula is a tautology.
    Taut { matrix: String, formula: String },
    /// Evaluate a formula under a valuation.
    Eval {
        matrix: String,
        formula: String,
        /// Valuation such as `A=tf,B=ff`.
        #[arg(long)]
        val: String,
    },
    /// Distribution quantifier table of an ACI operation.
    Qtable {
        matrix: String,
        #[arg(long)]
        op: String,
        /// Only count subsets whose value differs from this one.
        #[arg(long)]
        count_not: Option<String>,
    },
    /// Tableau rules read off the truth tables.
    Rules {
        matrix: String,
        #[arg(long)]
        latex: bool,
    },
    /// Decide an entailment with the signed tableau prover.
    Prove {
        matrix: String,
        #[command(flatten)]
        claim: Claim,
        #[arg(long)]
        print_tree: bool,
    },
    /// Sizes of the naive search spaces.
    Stats {
        #[arg(long)]
        values: usize,
        #[arg(long)]
        designated: usize,
        /// Class-respecting surjections, e.g. `12:6+4:3`.
        #[arg(long)]
        surjection_split: Option<String>,
    },
    /// Summary of a matrix, optionally with LaTeX tables.
    Report {
        matrix: String,
        /// Colour the LaTeX tables by this partition (literal or index).
        #[arg(long)]
        classes: Option<String>,
        /// Write a LaTeX document with the tables.
        #[arg(long)]
        latex: Option<PathBuf>,
    },
}

/// How a run ends when it doesn't end in a plain verdict.
enum Fail {
    Usage(String),
    Input(String),
    Budget(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted { .. } => Fail::Budget(e.to_string()),
            e => Fail::Input(e.to_string()),
        }
    }
}

type Run = Result<bool, Fail>;

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, text: impl AsRef<str>, value: Json) {
        if self.json {
            line(&value.to_string());
        } else if !text.as_ref().is_empty() {
            line(text.as_ref());
        }
    }
}

/// Prints one line; a closed stdout (e.g. piped into `head`) ends the run quietly.
fn line(text: &str) {
    let mut stdout = io::stdout().lock();
    if writeln!(stdout, "{text}").is_err() {
        std::process::exit(0);
    }
}

fn load(reference: &str) -> Result<Matrix, Fail> {
    if let Some(name) = reference.strip_prefix("builtin:") {
        return Ok(build_builtin(name)?);
    }
    let text = fs::read_to_string(reference).map_err(|e| Fail::Input(format!("{reference}: {e}")))?;
    parse_logic(&text).map_err(|e| Fail::Input(format!("{reference}: {e}")))
}

fn formula(text: &str) -> Result<Formula, Fail> {
    parse_formula(text).map_err(|e| Fail::Input(format!("formula {text:?}: {e}")))
}

fn write(path: &PathBuf, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn pairs(m1: &Matrix, m2: &Matrix, f: &ValueMap) -> Vec<(String, String)> {
    f.pairs(m1, m2).map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn emit_map(out: &Out, kind: &str, m1: &Matrix, m2: &Matrix, f: &ValueMap) {
    let ps = pairs(m1, m2, f);
    let text: Vec<String> = ps.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
    out.emit(
        text.join("\n"),
        json!({"kind": kind, "source": m1.name(), "target": m2.name(), "mapping": ps}),
    );
}

fn congruences(
    m: &Matrix,
    cli: &Cli,
    include_identity: bool,
    classes: Option<usize>,
) -> Result<Vec<Congruence>, Error> {
    let opts = CongruenceOptions {
        include_identity,
        classes,
        budget: Budget::seconds(cli.budget),
        jobs: cli.jobs,
        ..Default::default()
    };
    enumerate_congruences(m, &opts)
}

/// A partition literal, or an index into the non-identity congruence list.
fn partition_arg(m: &Matrix, cli: &Cli, arg: &str) -> Result<Partition, Fail> {
    if let Ok(i) = arg.parse::<usize>() {
        let all = congruences(m, cli, false, None)?;
        return all
            .into_iter()
            .nth(i)
            .map(Congruence::into_partition)
            .ok_or_else(|| Fail::Input(format!("no congruence with index {i}")));
    }
    Ok(Partition::parse(m, arg)?)
}

fn show(out: &Out, m: &Matrix) {
    let names = m.value_names();
    let w = names.iter().map(|n| n.chars().count()).max().unwrap_or(1);
    let pad = |s: &str| format!("{s:<w$}");
    let mut text = vec![
        format!("{}: {} values, {} designated", m.name(), m.len(), m.designated_count()),
        format!(
            "values: {}",
            m.values()
                .map(|v| format!("{}{}", m.value_name(v), if m.designates(v) { "*" } else { "" }))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    ];
    let mut ops = Vec::new();
    for op in m.ops() {
        text.push(format!("{}/{}:", op.name(), op.arity()));
        match op.arity() {
            1 => {
                for v in m.values() {
                    text.push(format!("  {}  {}", pad(m.value_name(v)), m.value_name(op.unary(v))));
                }
            }
            2 => {
                let head: Vec<String> = names.iter().map(|n| pad(n)).collect();
                text.push(format!("  {}  {}", pad(""), head.join(" ")));
                for a in m.values() {
                    let row: Vec<String> = m.values().map(|b| pad(m.value_name(op.binary(a, b)))).collect();
                    text.push(format!("  {}  {}", pad(m.value_name(a)), row.join(" ")));
                }
            }
            _ => {
                for t in manyval::matrix::Tuples::new(m.len(), op.arity()) {
                    let args: Vec<&str> = t.iter().map(|&v| m.value_name(v)).collect();
                    text.push(format!("  ({}) {}", args.join(","), m.value_name(op.eval(&t))));
                }
            }
        }
        let table: Vec<&str> = op.table().iter().map(|&v| m.value_name(v)).collect();
        ops.push(json!({"name": op.name(), "arity": op.arity(), "table": table}));
    }
    let designated: Vec<&str> = m.designated().map(|v| m.value_name(v)).collect();
    out.emit(
        text.join("\n").trim_end(),
        json!({"matrix": m.name(), "values": names, "designated": designated, "ops": ops}),
    );
}

fn verdict(out: &Out, m: &Matrix, v: &EntailmentVerdict) -> bool {
    let cv = v.countervaluation.as_ref().map(|c| c.display(m).to_string());
    let mut text = String::from(if v.holds { "holds" } else { "fails" });
    if let Some(c) = &cv {
        text.push_str(&format!("\ncountervaluation: {c}"));
    }
    let assignment: Vec<(String, String)> = v
        .countervaluation
        .iter()
        .flat_map(|c| c.iter().map(|(a, x)| (a.to_string(), m.value_name(x).to_string())))
        .collect();
    out.emit(
        text,
        json!({"holds": v.holds, "countervaluation": if v.holds { Json::Null } else { json!(assignment) }, "valuations_checked": v.valuations_checked}),
    );
    v.holds
}

fn entail_opts(cli: &Cli) -> EntailOptions {
    EntailOptions {
        jobs: cli.jobs,
        ..Default::default()
    }
}

fn proof(out: &Out, m: &Matrix, p: &ProofResult<'_>, tree: bool) {
    let s = p.tableau.stats();
    let mut text = vec![if p.holds {
        "closed".to_string()
    } else {
        "open".to_string()
    }];
    let assignment: Vec<(String, String)> = p
        .countervaluation
        .iter()
        .flat_map(|c| c.iter().map(|(a, x)| (a.to_string(), m.value_name(x).to_string())))
        .collect();
    if let Some(c) = &p.countervaluation {
        text.push(format!("countervaluation: {}", c.display(m)));
    }
    text.push(format!(
        "nodes {}, expansions {}, branches {} ({} closed, {} subsumed)",
        s.nodes, s.expansions, s.branches, s.closed_branches, s.subsumed_branches
    ));
    if tree {
        text.push(p.tableau.render().trim_end().to_string());
    }
    let mut value = json!({
        "closed": p.holds,
        "countervaluation": if p.holds { Json::Null } else { json!(assignment) },
        "nodes": s.nodes,
        "expansions": s.expansions,
        "branches": s.branches,
        "closed_branches": s.closed_branches,
        "subsumed_branches": s.subsumed_branches,
    });
    if tree {
        value["tree"] = serde_json::from_str(&p.tableau.to_json()).expect("tableau JSON is well-formed");
    }
    out.emit(text.join("\n"), value);
}

fn qtable(out: &Out, m: &Matrix, t: &DistributionTable, count_not: Option<&str>) -> Run {
    let set_names = |s: manyval::ValueSet| -> Vec<&str> {
        m.values()
            .filter(|v| s & v.bit() != 0)
            .map(|v| m.value_name(v))
            .collect()
    };
    match count_not {
        Some(name) => {
            let v = m.lookup(name)?;
            let n = t.count_other_than(v);
            out.emit(
                format!("{n} of {} subsets fold to a value other than {name}", t.len()),
                json!({"op": t.op(), "count": n, "subsets": t.len(), "not": name}),
            );
        }
        None => {
            for (s, v) in t.iter() {
                let members = set_names(s);
                out.emit(
                    format!("{{{}}} -> {}", members.join(","), m.value_name(v)),
                    json!({"op": t.op(), "subset": members, "value": m.value_name(v)}),
                );
            }
        }
    }
    Ok(true)
}

fn parse_split(text: &str) -> Result<Vec<(usize, usize)>, Fail> {
    text.split('+')
        .map(|part| {
            let (s, t) = part
                .split_once(':')
                .ok_or_else(|| Fail::Usage(format!("bad split part {part:?}, expected N:M")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Fail::Usage(format!("bad number {x:?} in split")))
            };
            Ok((num(s)?, num(t)?))
        })
        .collect()
}

fn report(out: &Out, cli: &Cli, m: &Matrix, classes: Option<&str>, latex: Option<&PathBuf>) -> Run {
    let all = congruences(m, cli, false, None)?;
    let autos = automorphisms(m).len();
    let mut text = vec![format!(
        "{}: {} values, {} designated",
        m.name(),
        m.len(),
        m.designated_count()
    )];
    let ops: Vec<String> = m.ops().iter().map(|o| format!("{}/{}", o.name(), o.arity())).collect();
    text.push(format!("operations: {}", ops.join(" ")));
    text.push(format!("non-identity congruences: {}", all.len()));
    for c in &all {
        text.push(format!(
            "  {} ({} classes)",
            c.partition().to_literal(m),
            c.partition().len()
        ));
    }
    text.push(format!("automorphisms: {autos}"));
    let mut aci = Vec::new();
    for op in m.ops().iter().filter(|o| o.arity() == 2) {
        let holds = is_aci(m, op.name())?.holds();
        text.push(format!("{} is {}ACI", op.name(), if holds { "" } else { "not " }));
        aci.push(json!({"op": op.name(), "aci": holds}));
    }
    let partition = classes.map(|c| partition_arg(m, cli, c)).transpose()?;
    if let Some(path) = latex {
        let body = emit_latex_tables(m, partition.as_ref())?;
        write(path, &latex_document(&body))?;
        text.push(format!("wrote {}", path.display()));
    }
    let lits: Vec<String> = all.iter().map(|c| c.partition().to_literal(m)).collect();
    out.emit(
        text.join("\n"),
        json!({
            "matrix": m.name(),
            "values": m.len(),
            "designated": m.designated_count(),
            "congruences": lits,
            "automorphisms": autos,
            "aci": aci,
            "latex": latex.map(|p| p.display().to_string()),
        }),
    );
    Ok(true)
}

fn run(cli: &Cli) -> Run {
    let out = Out { json: cli.json };
    match &cli.cmd {
        Cmd::Show { matrix } => {
            show(&out, &load(matrix)?);
            Ok(true)
        }
        Cmd::Product { left, right, o } => {
            let p = direct_product(&load(left)?, &load(right)?)?;
            let text = serialize_logic(&p);
            match o {
                Some(path) => {
                    write(path, &text)?;
                    out.emit(
                        format!("wrote {} ({} values)", path.display(), p.len()),
                        json!({"matrix": p.name(), "values": p.len(), "written": path.display().to_string()}),
                    );
                }
                None => out.emit(
                    text.trim_end(),
                    json!({"matrix": p.name(), "values": p.len(), "mvl": text}),
                ),
            }
            Ok(true)
        }
        Cmd::Congruences {
            matrix,
            include_identity,
            classes,
        } => {
            let m = load(matrix)?;
            let found = match congruences(&m, cli, *include_identity, *classes) {
                Ok(found) => found,
                Err(Error::BudgetExhausted { cause, partial }) => {
                    if let Partial::Congruences(cs) = &partial {
                        for c in cs {
                            out.emit(c.partition().to_literal(&m), json!({"partition": c.partition().to_literal(&m), "classes": c.partition().len(), "partial": true}));
                        }
                    }
                    return Err(Fail::Budget(format!(
                        "{cause}; {} partial result(s) printed",
                        partial.len()
                    )));
                }
                Err(e) => return Err(e.into()),
            };
            for c in &found {
                let lit = c.partition().to_literal(&m);
                out.emit(&lit, json!({"partition": lit, "classes": c.partition().len()}));
            }
            if found.is_empty() {
                out.emit("none", json!({"partition": Json::Null}));
            }
            Ok(!found.is_empty())
        }
        Cmd::Factor { matrix, classes, o } => {
            let m = load(matrix)?;
            let p = partition_arg(&m, cli, classes)?;
            if let Verdict::Fails(w) = is_congruence(&m, &p)? {
                let name = |v: &manyval::Value| m.value_name(*v).to_string();
                let why = match &w {
                    CongruenceViolation::MixedBlock {
                        designated,
                        undesignated,
                    } => {
                        format!("{} and {} share a block", name(designated), name(undesignated))
                    }
                    CongruenceViolation::Operation {
                        op,
                        left,
                        right,
                        results,
                    } => format!(
                        "{op}({}) = {} but {op}({}) = {}",
                        left.iter().map(name).collect::<Vec<_>>().join(","),
                        name(&results.0),
                        right.iter().map(name).collect::<Vec<_>>().join(","),
                        name(&results.1)
                    ),
                };
                out.emit("none", json!({"matrix": m.name(), "congruence": false, "reason": why}));
                eprintln!("not a congruence: {why}");
                return Ok(false);
            }
            let (factor, _) = factor_matrix(&m, &Congruence::verify(&m, p)?)?;
            let text = serialize_logic(&factor);
            match o {
                Some(path) => {
                    write(path, &text)?;
                    out.emit(
                        format!("wrote {} ({} values)", path.display(), factor.len()),
                        json!({"matrix": factor.name(), "values": factor.len(), "written": path.display().to_string()}),
                    );
                }
                None => out.emit(
                    text.trim_end(),
                    json!({"matrix": factor.name(), "values": factor.len(), "mvl": text}),
                ),
            }
            Ok(true)
        }
        Cmd::Iso { left, right } => {
            let (a, b) = (load(left)?, load(right)?);
            match find_isomorphism(&a, &b) {
                Some(f) => {
                    emit_map(&out, "iso", &a, &b, &f);
                    Ok(true)
                }
                None => {
                    out.emit("none", json!({"kind": "iso", "mapping": Json::Null}));
                    Ok(false)
                }
            }
        }
        Cmd::Epi { left, right, all } => {
            let (a, b) = (load(left)?, load(right)?);
            let opts = EpiOptions {
                find_all: *all,
                budget: Budget::seconds(cli.budget),
                jobs: cli.jobs,
            };
            let found = match find_epimorphisms(&a, &b, &opts) {
                Ok(found) => found,
                Err(Error::BudgetExhausted { cause, partial }) => {
                    if let Partial::Epimorphisms(fs) = &partial {
                        for f in fs {
                            emit_map(&out, "epi", &a, &b, f);
                        }
                    }
                    return Err(Fail::Budget(format!(
                        "{cause}; {} partial result(s) printed",
                        partial.len()
                    )));
                }
                Err(e) => return Err(e.into()),
            };
            for (i, f) in found.iter().enumerate() {
                if i > 0 && !cli.json {
                    line("");
                }
                emit_map(&out, "epi", &a, &b, f);
            }
            if found.is_empty() {
                out.emit("none", json!({"kind": "epi", "mapping": Json::Null}));
            }
            Ok(!found.is_empty())
        }
        Cmd::Auto { matrix } => {
            let m = load(matrix)?;
            let autos = automorphisms(&m);
            for (i, f) in autos.iter().enumerate() {
                if i > 0 && !cli.json {
                    line("");
                }
                emit_map(&out, "auto", &m, &m, f);
            }
            Ok(true)
        }
        Cmd::Entail { matrix, claim } => {
            let m = load(matrix)?;
            let premises = claim.p.iter().map(|p| formula(p)).collect::<Result<Vec<_>, _>>()?;
            let v = entails_with(&m, &premises, &formula(&claim.c)?, &entail_opts(cli))?;
            Ok(verdict(&out, &m, &v))
        }
        Cmd::Taut { matrix, formula: f } => {
            let m = load(matrix)?;
            let v = entails_with(&m, &[], &formula(f)?, &entail_opts(cli))?;
            Ok(verdict(&out, &m, &v))
        }
        Cmd::Eval {
            matrix,
            formula: f,
            val,
        } => {
            let m = load(matrix)?;
            let valuation = Valuation::parse(&m, val)?;
            let v = evaluate(&m, &formula(f)?, &valuation)?;
            let name = m.value_name(v);
            out.emit(name, json!({"value": name, "designated": m.designates(v)}));
            Ok(true)
        }
        Cmd::Qtable { matrix, op, count_not } => {
            let m = load(matrix)?;
            let t = distribution_table(&m, op)?;
            qtable(&out, &m, &t, count_not.as_deref())
        }
        Cmd::Rules { matrix, latex } => {
            let m = load(matrix)?;
            let rules = generate_rules(&m);
            if *latex {
                let text = emit_latex_rules(&m, &rules);
                out.emit(text.trim_end(), json!({"matrix": m.name(), "latex": text}));
            } else {
                for r in rules.iter() {
                    let branches: Vec<Vec<(String, usize)>> = r
                        .branches
                        .iter()
                        .map(|b| {
                            b.constraints()
                                .iter()
                                .map(|&(v, i)| (m.value_name(v).to_string(), i + 1))
                                .collect()
                        })
                        .collect();
                    out.emit(
                        r.display(&m).to_string(),
                        json!({"op": r.op, "arity": r.arity, "sign": m.value_name(r.sign), "branches": branches}),
                    );
                }
            }
            Ok(true)
        }
        Cmd::Prove {
            matrix,
            claim,
            print_tree,
        } => {
            let m = load(matrix)?;
            let rules = generate_rules(&m);
            let premises = claim.p.iter().map(|p| formula(p)).collect::<Result<Vec<_>, _>>()?;
            let p = prove_entailment(&m, &rules, &premises, &formula(&claim.c)?, Budget::seconds(cli.budget))?;
            proof(&out, &m, &p, *print_tree);
            Ok(p.holds)
        }
        Cmd::Stats {
            values,
            designated,
            surjection_split,
        } => {
            let mut s = search_space_stats(*values, *designated)?;
            if let Some(split) = surjection_split {
                s = s.with_surjection_split(&parse_split(split)?)?;
            }
            let (n, k) = (*values, *designated);
            let mut text = vec![
                format!("values {n}, designated {k}"),
                format!("bijections {k}!·{}! = {}", n - k, s.bijection_candidates),
                format!(
                    "partitions B({k})·B({}) = {}·{} = {}",
                    n - k,
                    s.bell_designated,
                    s.bell_undesignated,
                    s.congruence_candidates
                ),
            ];
            if let (Some(split), Some(c)) = (surjection_split, &s.surjection_candidates) {
                text.push(format!("surjections {split} = {c}"));
            }
            out.emit(
                text.join("\n"),
                json!({
                    "values": n,
                    "designated": k,
                    "bijections": s.bijection_candidates.to_string(),
                    "bell_designated": s.bell_designated.to_string(),
                    "bell_undesignated": s.bell_undesignated.to_string(),
                    "partitions": s.congruence_candidates.to_string(),
                    "surjections": s.surjection_candidates.as_ref().map(|c| c.to_string()),
                }),
            );
            Ok(true)
        }
        Cmd::Report { matrix, classes, latex } => {
            let m = load(matrix)?;
            report(&out, cli, &m, classes.as_deref(), latex.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if !(cli.budget > 0.0 && cli.budget.is_finite()) {
        eprintln!("manyval: budget must be a positive number of seconds");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("manyval: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Input(msg)) => {
            eprintln!("manyval: {msg}");
            ExitCode::from(3)
        }
        Err(Fail::Budget(msg)) => {
            eprintln!("manyval: {msg}");
            ExitCode::from(4)
        }
    }
}
