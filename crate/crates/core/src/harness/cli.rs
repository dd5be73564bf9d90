//! The `grouppack` command line. Results go to standard output as JSON;
//! the exit code is 0 for yes, 1 for no, 2 for unknown or no-within-box and
//! 3 for errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::{
    brute_force_knapsack, brute_force_subsetsum, random_acyclic_automaton, random_cnf,
    random_dinf_gkp, random_h3z_knapsack, random_word, random_z_knapsack, AratmpInstance,
    BoxAnswer, CocfInstance, ExpressionInstance, InstanceFile, OracleBudget,
};
use crate::cocf::{cocf_knapsack_report, validate_coword_grammar, Grammar, DEFAULT_SOLVER_LIMIT};
use crate::extension::{decide_gkp, CyclicExtension, DihedralExtension, FiniteExtension};
use crate::group::{GeneratorWord, GroupDescriptor};
use crate::hardness::{
    blocks_to_four_subgroups, cnf_to_subsetsum, expression_to_knapsack, polynomial_to_system,
    system_to_expression, CnfFormula, Polynomial,
};
use crate::json::wrap_all;
use crate::knapsack::{decide_knapsack_h3, int_exponents_to_nat, DecisionReport, KnapsackDecision, KnapsackInstance, DEFAULT_MODULI};
use crate::rational::acyclic_membership_run;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "grouppack", version, about = "Subset sum and knapsack over finitely generated groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact subset sum by exhaustive search.
    Ssp {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1 << 24)]
        cap: u64,
    },
    /// Three-valued knapsack decision over H3(Z) x Z^e.
    #[command(name = "knapsack-h3")]
    KnapsackH3 {
        #[arg(long)]
        instance: PathBuf,
        /// Box bound for the witness search.
        #[arg(long, default_value_t = 6)]
        budget: u64,
        #[arg(long, value_delimiter = ',')]
        moduli: Option<Vec<i64>>,
    },
    /// Generalized knapsack over a finite extension.
    Gkp {
        #[arg(long, value_enum)]
        group: ExtensionKind,
        #[arg(long)]
        instance: PathBuf,
        /// Index of the subgroup mZ when the group is z.
        #[arg(long, default_value_t = 2)]
        modulus: u32,
    },
    /// Acyclic rational membership.
    Aratmp {
        #[arg(long)]
        group: Option<PathBuf>,
        #[arg(long)]
        automaton: Option<PathBuf>,
        #[arg(long)]
        word: Option<PathBuf>,
        /// An aratmp instance file, instead of the three files above.
        #[arg(long, conflicts_with_all = ["group", "automaton", "word"])]
        instance: Option<PathBuf>,
    },
    /// Knapsack over a group given by a co-word grammar.
    Cocf {
        #[arg(long)]
        grammar: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        /// Word length up to which the grammar is checked against the group.
        #[arg(long, default_value_t = 6)]
        validate_len: usize,
        #[arg(long, default_value_t = DEFAULT_SOLVER_LIMIT)]
        solver_limit: usize,
    },
    /// Compile a DIMACS 3CNF formula into subset sum over G_alpha.
    #[command(name = "reduce-3cnf")]
    Reduce3Cnf {
        file: PathBuf,
        /// Print the digit strings and generator words instead of an instance.
        #[arg(long)]
        words: bool,
    },
    /// Compile P(x) = a into a system, an expression or a knapsack instance.
    #[command(name = "encode-poly")]
    EncodePoly {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long, value_enum, default_value_t = Emit::System)]
        emit: Emit,
    },
    /// Rewrite an expression instance (or P(x) = a) as membership in a
    /// product of four abelian subgroups.
    #[command(name = "emit-4subgroups")]
    Emit4Subgroups {
        #[arg(long, conflicts_with_all = ["poly", "a"])]
        instance: Option<PathBuf>,
        #[arg(long, requires = "a")]
        poly: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<BigInt>,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Print a random instance; the same seed gives the same instance.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum)]
        kind: GenKind,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Exhaustive subset sum.
    Ssp {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 1 << 24)]
        cap: u64,
        #[arg(long, default_value_t = 60)]
        timeout_secs: u64,
    },
    /// Knapsack search over the box [0, box]^k.
    Kp {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long = "box", default_value_t = 6)]
        bound: u64,
        #[arg(long, default_value_t = 1 << 24)]
        cap: u64,
        #[arg(long, default_value_t = 60)]
        timeout_secs: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExtensionKind {
    Dinf,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    System,
    Expression,
    Knapsack,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenKind {
    /// Knapsack over Z^2.
    KpZ,
    /// Knapsack over H3(Z) x Z.
    KpH3,
    /// Generalized knapsack over D_inf.
    GkpDinf,
    /// Acyclic membership over UT_3(Z).
    Aratmp,
    /// Knapsack over Z for the co-word grammar of Z.
    Cocf,
    /// 3CNF formula, printed in DIMACS form.
    Cnf,
}

/// Runs the command line on `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("malformed JSON in {}", path.display()))
}

fn read_instance(path: &Path) -> anyhow::Result<InstanceFile> {
    InstanceFile::from_json(&read(path)?).with_context(|| format!("invalid instance {}", path.display()))
}

fn emit(out: &mut dyn Write, value: &impl Serialize) -> anyhow::Result<()> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn yes_no(b: bool) -> i32 {
    if b {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match command {
        Command::Ssp { instance, cap } => {
            let inst = read_instance(&instance)?.knapsack()?;
            let budget = OracleBudget::new(1, cap, Duration::from_secs(u64::MAX >> 2))?;
            subsetsum(out, &inst, &budget, "decision")
        }
        Command::KnapsackH3 {
            instance,
            budget,
            moduli,
        } => {
            let inst = read_instance(&instance)?.knapsack()?;
            let moduli = moduli.unwrap_or_else(|| DEFAULT_MODULI.to_vec());
            let d = decide_knapsack_h3(&inst, budget, &moduli)?;
            emit(out, &DecisionReport::from(&d))?;
            Ok(match d {
                KnapsackDecision::Yes(_) => EXIT_YES,
                KnapsackDecision::No(_) => EXIT_NO,
                KnapsackDecision::Unknown => EXIT_UNKNOWN,
            })
        }
        Command::Gkp {
            group,
            instance,
            modulus,
        } => {
            let inst = read_instance(&instance)?.gkp()?;
            let oracle: Box<dyn FiniteExtension> = match group {
                ExtensionKind::Dinf => Box::new(DihedralExtension::default()),
                ExtensionKind::Z => {
                    if modulus == 0 {
                        bail!("modulus must be positive");
                    }
                    Box::new(CyclicExtension::new(modulus))
                }
            };
            if inst.group != *oracle.group() {
                bail!("instance group {:?} does not match --group", inst.group);
            }
            let d = decide_gkp(&inst, oracle.as_ref())?;
            emit(
                out,
                &json!({
                    "solvable": d.solvable,
                    "witness": d.witness.as_ref().map(|w| wrap_all(w)),
                    "pure_instances": d.pure_instances,
                }),
            )?;
            Ok(yes_no(d.solvable))
        }
        Command::Aratmp {
            group,
            automaton,
            word,
            instance,
        } => {
            let inst = match (instance, group, automaton, word) {
                (Some(p), ..) => read_instance(&p)?.aratmp()?,
                (None, Some(g), Some(a), Some(w)) => {
                    let inst = InstanceFile::Aratmp(AratmpInstance {
                        group: read_json(&g)?,
                        automaton: read_json(&a)?,
                        word: read_json(&w)?,
                    });
                    inst.validate()?;
                    inst.aratmp()?
                }
                _ => bail!("give --instance, or all of --group, --automaton and --word"),
            };
            let run = acyclic_membership_run(&inst.automaton, &inst.word, &inst.group)?;
            emit(
                out,
                &json!({
                    "member": run.member,
                    "witness": run.witness,
                    "max_norm": run.max_norm.map(|n| n.to_string()),
                    "bound": run.bound.map(|b| b.to_string()),
                }),
            )?;
            Ok(yes_no(run.member))
        }
        Command::Cocf {
            grammar,
            instance,
            validate_len,
            solver_limit,
        } => {
            let w: Grammar = read_json(&grammar)?;
            let CocfInstance { group, bases, target } = read_instance(&instance)?.cocf()?;
            if let Some(g) = &group {
                validate_coword_grammar(&w, g, validate_len)?;
            }
            let report = cocf_knapsack_report(&w, &bases, &target, solver_limit)?;
            emit(out, &report)?;
            Ok(yes_no(report.solvable))
        }
        Command::Reduce3Cnf { file, words } => {
            let text = read(&file)?;
            let c = CnfFormula::parse_dimacs(&text)?;
            let r = cnf_to_subsetsum(&c);
            if words {
                emit(out, &r)?;
            } else {
                let bases = r
                    .words
                    .iter()
                    .map(|w| r.group.evaluate_word(w))
                    .collect::<Result<_, _>>()?;
                let target = r.group.evaluate_word(&r.target)?;
                emit(out, &InstanceFile::Ssp(KnapsackInstance::new(r.group.clone(), bases, target)?))?;
            }
            Ok(EXIT_YES)
        }
        Command::EncodePoly { poly, a, emit: what } => {
            let p: Polynomial = read_json(&poly)?;
            let sys = polynomial_to_system(&p, &a);
            match what {
                Emit::System => emit(out, &InstanceFile::System(sys))?,
                Emit::Expression | Emit::Knapsack => {
                    let (expression, target) = system_to_expression(&sys)?;
                    if what == Emit::Expression {
                        emit(out, &InstanceFile::Expression(ExpressionInstance { expression, target }))?;
                    } else {
                        let ek = expression_to_knapsack(&expression, &target)?;
                        emit(out, &InstanceFile::Kp(int_exponents_to_nat(&ek.instance)?))?;
                    }
                }
            }
            Ok(EXIT_YES)
        }
        Command::Emit4Subgroups { instance, poly, a } => {
            let ExpressionInstance { expression, target } = match (instance, poly, a) {
                (Some(p), ..) => read_instance(&p)?.expression()?,
                (None, Some(p), Some(a)) => {
                    let p: Polynomial = read_json(&p)?;
                    let (expression, target) = system_to_expression(&polynomial_to_system(&p, &a))?;
                    ExpressionInstance { expression, target }
                }
                _ => bail!("give --instance, or --poly with --a"),
            };
            emit(out, &blocks_to_four_subgroups(&expression, &target)?)?;
            Ok(EXIT_YES)
        }
        Command::Oracle { which } => match which {
            OracleCommand::Ssp {
                instance,
                cap,
                timeout_secs,
            } => {
                let inst = read_instance(&instance)?.knapsack()?;
                let budget = OracleBudget::new(1, cap, Duration::from_secs(timeout_secs))?;
                subsetsum(out, &inst, &budget, "answer")
            }
            OracleCommand::Kp {
                instance,
                bound,
                cap,
                timeout_secs,
            } => {
                let inst = read_instance(&instance)?.knapsack()?;
                let budget = OracleBudget::new(bound, cap, Duration::from_secs(timeout_secs))?;
                let answer = brute_force_knapsack(&inst, &budget)?;
                emit(out, &answer)?;
                Ok(match answer {
                    BoxAnswer::Yes { .. } => EXIT_YES,
                    BoxAnswer::NoWithinBox { .. } => EXIT_UNKNOWN,
                })
            }
        },
        Command::Gen { seed, kind } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match kind {
                GenKind::KpZ => emit(out, &InstanceFile::Kp(random_z_knapsack(&mut rng, 2, 3, 3)?))?,
                GenKind::KpH3 => emit(out, &InstanceFile::Kp(random_h3z_knapsack(&mut rng, 1, 3, 2)?))?,
                GenKind::GkpDinf => emit(out, &InstanceFile::Gkp(random_dinf_gkp(&mut rng, 3, 4)?))?,
                GenKind::Aratmp => {
                    let group = GroupDescriptor::Ut { d: 3 };
                    let automaton = random_acyclic_automaton(&mut rng, 6, 3, 2, 2)?;
                    let word = random_word(&mut rng, 3, 4);
                    emit(out, &InstanceFile::Aratmp(AratmpInstance { group, automaton, word }))?
                }
                GenKind::Cocf => {
                    let k = rand::Rng::gen_range(&mut rng, 0..=3);
                    let bases: Vec<GeneratorWord> = (0..k).map(|_| random_word(&mut rng, 1, 3)).collect();
                    let target = random_word(&mut rng, 1, 4);
                    emit(
                        out,
                        &InstanceFile::Cocf(CocfInstance {
                            group: Some(GroupDescriptor::Z { n: 1 }),
                            bases,
                            target,
                        }),
                    )?
                }
                GenKind::Cnf => write!(out, "{}", random_cnf(&mut rng, 3, 2)?.to_dimacs())?,
            }
            Ok(EXIT_YES)
        }
    }
}

fn subsetsum(
    out: &mut dyn Write,
    inst: &KnapsackInstance,
    budget: &OracleBudget,
    field: &str,
) -> anyhow::Result<i32> {
    let r = brute_force_subsetsum(inst, budget)?;
    let value = match &r {
        Some(eps) => json!({
            field: "yes",
            "witness": eps.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
        }),
        None => json!({ field: "no", "exhaustive": true }),
    };
    emit(out, &value)?;
    Ok(yes_no(r.is_some()))
}
