use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fopkit::logic::{eval_fo, eval_so, parse_formula, Formula};
use fopkit::par::Exec;
use fopkit::problems::{
    decode_cnf, decode_dnf, decode_graph, decode_vcsat, qsat2_witness, qunsat2_witness, two_cc_witness,
    unique_ext_witness, vcsat_witness,
};
use fopkit::reductions::{by_name, compile_sentence, shipped, verify_reduction, Fidelity, Problem, VerifyOptions};
use fopkit::text::{print_fop_document, print_graph, print_structure, Item, Reader};
use fopkit::universality::{
    check_monotone, check_universality, witness_2cc, witness_2cc_complement, GraphProblem, LiteralCondition,
    UniversalityOptions,
};
use fopkit::{Budget, Error, Structure};

/// Finite-model workbench for first-order projections.
#[derive(Parser, Debug)]
#[command(name = "fopkit", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Most structures one enumeration may visit.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    budget: u64,
    /// Most nodes the 2-clique-coloring decider accepts.
    #[arg(long, global = true, default_value_t = 20)]
    color_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = FidelityArg::Corrected)]
    fidelity: FidelityArg,
    /// Largest size for the guard exclusivity check.
    #[arg(long, global = true, default_value_t = 8)]
    bound: usize,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FidelityArg {
    Verbatim,
    Corrected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Structure,
    Graph,
    Fop,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a sentence on a structure.
    Eval { structure: PathBuf, formula: PathBuf },
    /// Decide membership of an instance: qsat2, qunsat2, unique-ext, 2cc, 2cc-n:<n>, vcsat.
    Decide { problem: String, instance: PathBuf },
    /// Apply a named reduction, or print its query.
    Reduce {
        name: String,
        instance: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Emit::Structure)]
        emit: Emit,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compile a normal-form sentence into a query onto QSat2 and check it.
    Compile {
        sentence: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        sizes: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check membership agreement of a reduction on every structure of the given sizes.
    Verify {
        name: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Check that shipped reductions are projections.
    Validate { names: Vec<String> },
    /// Universality checks over graphs.
    Universality {
        #[command(subcommand)]
        command: UniversalityCommand,
    },
    /// Build the witness graph for a list of conditions such as `E(0,1)` or `!E(1,2)`.
    Witness {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        m: usize,
        #[arg(allow_hyphen_values = true)]
        conditions: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum UniversalityCommand {
    Check {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        mmax: usize,
        /// Also check (n, k-1) and (n+1, k).
        #[arg(long)]
        monotone: bool,
    },
}

/// Exit status with the stable codes: 0 accept/pass, 1 reject, 2 usage or
/// parse error, 3 budget.
enum Outcome {
    Accept,
    Reject,
}

impl Outcome {
    fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Accept
        } else {
            Outcome::Reject
        }
    }
}

struct Ctx {
    budget: Budget,
    format: Format,
    fidelity: Fidelity,
    bound: usize,
    exec: Exec,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Invalid(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// The single instance of a document, with its name.
fn load_instance(path: &Path) -> Result<(String, Structure), Error> {
    let items = Reader::new().read(&read(path)?)?;
    let mut found = items.iter().filter(|i| i.is_instance());
    match (found.next(), found.next()) {
        (Some(item), None) => Ok((item.name().to_string(), item.to_structure()?)),
        _ => Err(Error::Invalid(format!("{}: expected exactly one instance", path.display()))),
    }
}

fn set_text(s: &std::collections::BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn cmd_eval(ctx: &Ctx, structure: &Path, formula: &Path) -> Result<Outcome, Error> {
    let (_, a) = load_instance(structure)?;
    let text = read(formula)?;
    let phi: Formula = if text.trim_start().starts_with("sentence") {
        let mut reader = Reader::new();
        let items = reader.read(&text)?;
        match items.into_iter().next() {
            Some(Item::Sentence { formula, .. }) => formula,
            _ => return Err(Error::Invalid("expected a sentence".into())),
        }
    } else {
        parse_formula(&text, a.vocab())?
    };
    let start = Instant::now();
    let value = if phi.has_second_order() { eval_so(&a, &phi, &ctx.budget)? } else { eval_fo(&a, &phi, &[])? };
    println!("{value}");
    eprintln!("time={:.3}ms", start.elapsed().as_secs_f64() * 1e3);
    Ok(Outcome::from_bool(value))
}

fn cmd_decide(ctx: &Ctx, problem: &str, instance: &Path) -> Result<Outcome, Error> {
    let problem: Problem = problem.parse()?;
    let (_, a) = load_instance(instance)?;
    let b = &ctx.budget;
    let (verdict, witness) = match problem {
        Problem::Qsat2 => {
            let w = qsat2_witness(&decode_dnf(&a)?, b)?;
            (w.is_some(), w.map(|s| format!("true existential variables: {}", set_text(&s))))
        }
        Problem::Qunsat2 => {
            let w = qunsat2_witness(&decode_cnf(&a)?, b)?;
            (w.is_some(), w.map(|s| format!("true existential variables: {}", set_text(&s))))
        }
        Problem::UniqueExt => {
            let w = unique_ext_witness(&decode_cnf(&a)?, b)?;
            (w.is_some(), w.map(|(e, u)| format!("existential true: {} unique universal true: {}", set_text(&e), set_text(&u))))
        }
        Problem::TwoCc | Problem::TwoCcN(_) => {
            let g = decode_graph(&a)?;
            if let Problem::TwoCcN(n) = problem {
                if g.node_count() < n {
                    println!("true");
                    println!("fewer than {n} nodes");
                    return Ok(Outcome::Accept);
                }
            }
            let w = two_cc_witness(&g, b)?;
            let red = |c: Vec<bool>| c.iter().enumerate().filter(|(_, &r)| r).map(|(v, _)| v).collect();
            (w.is_some(), w.map(|c| format!("red: {}", set_text(&red(c)))))
        }
        Problem::Vcsat => {
            let w = vcsat_witness(&decode_vcsat(&a)?, b)?;
            (w.is_some(), w.map(|s| format!("existential set: {}", set_text(&s))))
        }
        Problem::Definable { .. } => unreachable!("not parsed from a name"),
    };
    println!("{verdict}");
    if let Some(w) = witness {
        println!("{w}");
    }
    Ok(Outcome::from_bool(verdict))
}

fn cmd_reduce(ctx: &Ctx, name: &str, instance: Option<&PathBuf>, emit: Emit, output: Option<&PathBuf>) -> Result<Outcome, Error> {
    let red = by_name(name, ctx.fidelity)?;
    if emit == Emit::Fop {
        write_out(output, &print_fop_document(&red.query))?;
        return Ok(Outcome::Accept);
    }
    let path = instance.ok_or_else(|| Error::Invalid("reduce needs an instance file unless --emit fop".into()))?;
    let (inst_name, a) = load_instance(path)?;
    let source = red.source.vocabulary();
    if !a.vocab().same_symbols(&source) {
        return Err(Error::VocabularyMismatch { expected: source.name().into(), found: a.vocab().name().into() });
    }
    let image = red.apply(&a)?;
    let out_name = if inst_name.is_empty() { "image".to_string() } else { format!("{inst_name}_image") };
    let text = match emit {
        Emit::Graph => print_graph(&out_name, &decode_graph(&image)?),
        _ => print_structure(&out_name, &image),
    };
    write_out(output, &format!("{text}\n"))?;
    Ok(Outcome::Accept)
}

fn verify_opts(ctx: &Ctx) -> VerifyOptions {
    VerifyOptions { budget: ctx.budget, exec: ctx.exec, keep_rows: ctx.format == Format::Tsv }
}

fn report_rows(ctx: &Ctx, report: &fopkit::reductions::VerificationReport) -> String {
    let mut out = String::new();
    if ctx.format == Format::Tsv {
        out.push_str("size\tinstance\tsource\ttarget\tagree\n");
        for r in &report.rows {
            let _ = writeln!(out, "{}\t{}\t{}\t{}\t{}", r.size, r.instance, r.source, r.target, r.agrees());
        }
    } else {
        for c in &report.counterexamples {
            let _ = writeln!(out, "counterexample size={} instance={} source={} target={}", c.size, c.instance, c.source, c.target);
        }
    }
    let _ = writeln!(out, "{}", report.summary());
    out
}

fn cmd_compile(ctx: &Ctx, sentence: &Path, sizes: &[usize], output: Option<&PathBuf>) -> Result<Outcome, Error> {
    let items = Reader::new().read(&read(sentence)?)?;
    let Some((name, vocab, formula)) = items.into_iter().find_map(|i| match i {
        Item::Sentence { name, vocab, formula } => Some((name, vocab, formula)),
        _ => None,
    }) else {
        return Err(Error::Invalid(format!("{}: no sentence", sentence.display())));
    };
    let red = compile_sentence(&name, &formula, vocab)?;
    let fop = print_fop_document(&red.query);
    let report = verify_reduction(&red, sizes, &VerifyOptions { keep_rows: false, ..verify_opts(ctx) })?;
    match output {
        Some(_) => {
            write_out(output, &fop)?;
            println!("{}", report.summary());
        }
        None => {
            print!("{fop}");
            eprintln!("{}", report.summary());
        }
    }
    Ok(Outcome::from_bool(report.passed()))
}

fn cmd_verify(ctx: &Ctx, name: &str, sizes: &[usize]) -> Result<Outcome, Error> {
    let red = by_name(name, ctx.fidelity)?;
    let report = verify_reduction(&red, sizes, &verify_opts(ctx))?;
    print!("{}", report_rows(ctx, &report));
    Ok(Outcome::from_bool(report.passed()))
}

fn cmd_validate(ctx: &Ctx, names: &[String]) -> Result<Outcome, Error> {
    let reds = if names.is_empty() {
        shipped(ctx.fidelity)?
    } else {
        names.iter().map(|n| by_name(n, ctx.fidelity)).collect::<Result<Vec<_>, _>>()?
    };
    let mut all = true;
    for red in &reds {
        let r = red.validate(ctx.bound);
        all &= r.is_projection;
        match ctx.format {
            Format::Tsv => println!("{}\t{}\t{}\t{}", red.name, r.syntactic_ok, r.exclusivity_ok, r.violations.len()),
            Format::Text => {
                println!("{} {}", red.name, if r.is_projection { "projection" } else { "NOT a projection" });
                for v in &r.violations {
                    println!("  {v}");
                }
            }
        }
    }
    Ok(Outcome::from_bool(all))
}

fn cmd_universality(ctx: &Ctx, cmd: &UniversalityCommand) -> Result<Outcome, Error> {
    let UniversalityCommand::Check { problem, n, k, mmax, monotone } = cmd;
    let problem: GraphProblem = problem.parse()?;
    let opts = UniversalityOptions { budget: ctx.budget, exec: ctx.exec };
    let report = check_universality(problem, *n, *k, *mmax, &opts)?;
    let counterexample = report.counterexample.as_ref().map(|(m, conds)| {
        let c: Vec<String> = conds.iter().map(|c| c.to_string()).collect();
        format!("m={m} [{}]", c.join(", "))
    });
    match ctx.format {
        Format::Tsv => println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            report.problem,
            report.n,
            report.k,
            report.m_range.1,
            if report.pass { "pass" } else { "fail" },
            report.sequences,
            report.witnesses_validated,
            counterexample.as_deref().unwrap_or("-")
        ),
        Format::Text => {
            println!(
                "{} ({},{}) m={}..{}: {}",
                report.problem,
                report.n,
                report.k,
                report.m_range.0,
                report.m_range.1,
                if report.pass { "pass" } else { "fail" }
            );
            println!(
                "sequences={} full_sequences={} witnesses_validated={} searched={}",
                report.sequences, report.full_sequences, report.witnesses_validated, report.searched
            );
            if let Some(c) = &counterexample {
                println!("counterexample {c}");
            }
        }
    }
    let mut pass = report.pass;
    if *monotone && pass && *k > 0 {
        let m = check_monotone(problem, &report, *mmax, &opts)?;
        println!("monotone: {}", if m { "pass" } else { "fail" });
        pass &= m;
    }
    Ok(Outcome::from_bool(pass))
}

fn cmd_witness(problem: &str, m: usize, conditions: &[String]) -> Result<Outcome, Error> {
    let conds = conditions.iter().map(|c| c.parse()).collect::<Result<Vec<LiteralCondition>, _>>()?;
    match problem.parse::<GraphProblem>()? {
        GraphProblem::TwoCc => {
            let w = witness_2cc(&conds, m)?;
            println!("# red: {}", set_text(&w.red));
            println!("{}", print_graph("witness", &w.graph));
        }
        GraphProblem::TwoCcComplement => println!("{}", print_graph("witness", &witness_2cc_complement(&conds, m)?)),
        other => return Err(Error::Invalid(format!("no witness construction for {other}"))),
    }
    Ok(Outcome::Accept)
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    if g.budget == 0 || g.bound == 0 {
        return Err(Error::Invalid("--budget and --bound must be positive".into()));
    }
    let ctx = Ctx {
        budget: Budget::default().with_max_instances(g.budget).with_max_color_nodes(g.color_cap),
        format: g.format,
        fidelity: match g.fidelity {
            FidelityArg::Verbatim => Fidelity::Verbatim,
            FidelityArg::Corrected => Fidelity::Corrected,
        },
        bound: g.bound,
        exec: if g.sequential { Exec::Sequential } else { Exec::Parallel },
    };
    match &cli.command {
        Command::Eval { structure, formula } => cmd_eval(&ctx, structure, formula),
        Command::Decide { problem, instance } => cmd_decide(&ctx, problem, instance),
        Command::Reduce { name, instance, emit, output } => cmd_reduce(&ctx, name, instance.as_ref(), *emit, output.as_ref()),
        Command::Compile { sentence, sizes, output } => cmd_compile(&ctx, sentence, sizes, output.as_ref()),
        Command::Verify { name, sizes } => cmd_verify(&ctx, name, sizes),
        Command::Validate { names } => cmd_validate(&ctx, names),
        Command::Universality { command } => cmd_universality(&ctx, command),
        Command::Witness { problem, m, conditions } => cmd_witness(problem, *m, conditions),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Accept) => ExitCode::SUCCESS,
        Ok(Outcome::Reject) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
    }
}
