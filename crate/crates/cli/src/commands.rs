use std::collections::BTreeMap;
use std::fs;
use std::time::{Duration, Instant};

use boolcirc::db::{build_database_with, BuildOptions, Database};
use boolcirc::function::{is_monotone, is_symmetric, named_function, NamedFunction};
use boolcirc::generators::*;
use boolcirc::minimize::{cleanup, minimize_subcircuits_with, MinimizeOptions};
use boolcirc::sat::{
    check_equivalence_with, default_solver, dimacs, is_satisfiable_with, tseitin, Equivalence, Satisfiability,
};
use boolcirc::synth::{
    synthesize_fixed_size_with, synthesize_min_with, SynthesisOptions, SynthesisResult, SynthesisSpec,
    SynthesisStatus,
};
use boolcirc::{Basis, Circuit, PartialTruthTable};
use serde_json::json;

use crate::report::{bits, emit, read_circuit, Format, Report};
use crate::{Cli, CliError, Command, DbAction, Effort, Family, Outcome, TableArgs};

const INFO_TABLE_CAP: usize = 16;

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut r = Report::new(cli.json);
    let outcome = match cli.command {
        Command::Gen {
            family,
            n,
            common,
            hybrid,
            minimize,
            budget,
            seed,
            out,
        } => {
            let basis: Basis = common.basis.into();
            let hopts = HybridOptions {
                tail_timeout: common.timeout()?,
                minimize_budget: Duration::ZERO,
            };
            let c = match family {
                Family::Fa => gen_full_adder(basis),
                Family::Ha => gen_half_adder(basis),
                Family::Sum => gen_sum(n, basis)?,
                Family::Maj if hybrid => gen_maj_hybrid(n, basis, &hopts)?,
                Family::Maj => gen_maj(n, basis, false)?,
                Family::Sort if hybrid => gen_sort_hybrid(n, basis, &hopts)?,
                Family::Sort => gen_sort(n, basis, false)?,
                Family::Mult => gen_mult(n, basis)?,
                Family::Sqr => gen_square(n, basis)?,
                Family::Div => gen_div(n, basis)?,
                Family::Equal => gen_equal(n, basis)?,
                Family::Ite => gen_ite(),
            };
            r.set("family", format!("{family:?}").to_lowercase());
            r.set("n", n);
            r.set("basis", basis.to_string());
            let c = if minimize {
                let opts = MinimizeOptions {
                    seed,
                    query_timeout: common.timeout()?.min(Duration::from_secs(10)),
                    ..MinimizeOptions::new(basis, Duration::from_secs(budget))
                };
                let (m, stats) = minimize_subcircuits_with(&c, &opts, default_solver().as_mut())?;
                r.set("initial_size", stats.initial_size);
                r.set("replacements", stats.replacements);
                m
            } else {
                c
            };
            shape(&c, &mut r);
            emit(&c, out.output.as_ref(), out.format, &mut r)?;
            Outcome::Done
        }
        Command::Info { file } => {
            let c = read_circuit(&file)?;
            shape(&c, &mut r);
            r.set("gates", c.gate_count());
            let mut ops: BTreeMap<String, usize> = BTreeMap::new();
            for id in c.node_ids() {
                if let Some(op) = c.node(id).op() {
                    *ops.entry(op.name().to_string()).or_default() += 1;
                }
            }
            r.set("ops", json!(ops));
            r.set("aig", c.validate_basis(Basis::Aig).is_empty());
            r.set("blocks", c.blocks().len());
            if c.num_inputs() <= INFO_TABLE_CAP {
                let tt = c.truth_table()?;
                r.set("symmetric", is_symmetric(&tt));
                r.set("monotone", is_monotone(&tt));
                if c.num_inputs() <= 6 {
                    r.set("table", tt.to_binary_columns().join(" "));
                } else {
                    r.set("table_hex", tt.to_hex_columns().join(" "));
                }
            }
            Outcome::Done
        }
        Command::Sat {
            file,
            target,
            dimacs: dimacs_out,
            common,
        } => {
            let c = read_circuit(&file)?;
            let target = target.map(|t| parse_bits(&t)).transpose()?;
            if let Some(path) = dimacs_out {
                let mut cnf = tseitin(&c);
                let want = target.clone().unwrap_or_else(|| vec![true; c.num_outputs()]);
                for (&o, &b) in c.outputs().iter().zip(&want) {
                    let v = cnf.var_of(o).expect("outputs are mapped");
                    cnf.add_clause(&[if b { v } else { -v }]);
                }
                fs::write(&path, dimacs::to_dimacs(&cnf))?;
                r.set("dimacs", path.display().to_string());
            }
            r.set("size", c.size());
            let t0 = Instant::now();
            let res = is_satisfiable_with(&c, target.as_deref(), default_solver().as_mut(), Some(common.timeout()?))?;
            r.set("time_ms", t0.elapsed().as_millis() as u64);
            match res {
                Satisfiability::Satisfiable(x) => {
                    r.set("status", "SAT");
                    r.set("assignment", bits(&x));
                    Outcome::Done
                }
                Satisfiability::Unsatisfiable => {
                    r.set("status", "UNSAT");
                    Outcome::Negative
                }
                Satisfiability::Unknown => {
                    r.set("status", "UNKNOWN");
                    Outcome::Timeout
                }
            }
        }
        Command::Equiv { first, second, common } => {
            let a = read_circuit(&first)?;
            let b = read_circuit(&second)?;
            r.set("size_first", a.size());
            r.set("size_second", b.size());
            match check_equivalence_with(&a, &b, default_solver().as_mut(), Some(common.timeout()?))? {
                Equivalence::Equivalent => {
                    r.set("result", "equivalent");
                    Outcome::Done
                }
                Equivalence::Counterexample(x) => {
                    r.set("result", "not equivalent");
                    r.set("counterexample", bits(&x));
                    r.set("first", bits(&a.evaluate(&x)?));
                    r.set("second", bits(&b.evaluate(&x)?));
                    Outcome::Negative
                }
                Equivalence::Unknown => {
                    r.set("result", "unknown");
                    Outcome::Timeout
                }
            }
        }
        Command::Synth {
            table,
            common,
            size,
            upper,
            no_symmetry_breaking,
            out,
        } => {
            let target = target_of(&table)?;
            let basis: Basis = common.basis.into();
            let options = SynthesisOptions {
                symmetry_breaking: !no_symmetry_breaking,
                timeout: Some(common.timeout()?),
            };
            let mut solver = default_solver();
            let res: SynthesisResult = match size {
                Some(s) => synthesize_fixed_size_with(
                    &SynthesisSpec::new(target, basis, s).with_options(options),
                    solver.as_mut(),
                )?,
                None => synthesize_min_with(&target, basis, upper, &options, solver.as_mut())?,
            };
            r.set("basis", basis.to_string());
            r.set("queries", res.stats.queries);
            r.set("solver_ms", res.stats.solver_time.as_millis() as u64);
            r.set("variables", res.stats.variables);
            r.set("clauses", res.stats.clauses);
            match res.status {
                SynthesisStatus::Found(c) => {
                    r.set("status", if size.is_some() { "FOUND" } else { "MINIMUM" });
                    r.set("size", c.size());
                    emit(&c, out.output.as_ref(), out.format, &mut r)?;
                    Outcome::Done
                }
                SynthesisStatus::None => {
                    r.set("status", "NONE");
                    Outcome::Negative
                }
                SynthesisStatus::Unknown(best) => {
                    r.set("status", "UNKNOWN");
                    if let Some(c) = best {
                        r.set("size", c.size());
                        emit(&c, out.output.as_ref(), out.format, &mut r)?;
                    }
                    Outcome::Timeout
                }
            }
        }
        Command::Minimize {
            file,
            common,
            effort,
            budget,
            seed,
            out,
        } => {
            let c = read_circuit(&file)?;
            let basis: Basis = common.basis.into();
            r.set("initial_size", c.size());
            let m = match effort {
                Effort::Low => cleanup(&c),
                Effort::High => {
                    let opts = MinimizeOptions {
                        seed,
                        query_timeout: common.timeout()?.min(Duration::from_secs(10)),
                        ..MinimizeOptions::new(basis, Duration::from_secs(budget))
                    };
                    let (m, stats) = minimize_subcircuits_with(&c, &opts, default_solver().as_mut())?;
                    r.set("windows_tried", stats.windows_tried);
                    r.set("replacements", stats.replacements);
                    r.set("budget_exhausted", stats.budget_exhausted);
                    m
                }
            };
            r.set("size", m.size());
            let verdict = match check_equivalence_with(&c, &m, default_solver().as_mut(), Some(common.timeout()?))? {
                Equivalence::Equivalent => "equivalent",
                Equivalence::Counterexample(_) => {
                    return Err(CliError::Usage("minimization changed the function".into()));
                }
                Equivalence::Unknown => "unknown",
            };
            r.set("verified", verdict);
            emit(&m, out.output.as_ref(), out.format, &mut r)?;
            Outcome::Done
        }
        Command::Convert { input, out } => {
            let c = read_circuit(&input)?;
            shape(&c, &mut r);
            emit(&c, out.output.as_ref(), out.format, &mut r)?;
            Outcome::Done
        }
        Command::Draw { file, output } => {
            let c = read_circuit(&file)?;
            r.set("size", c.size());
            emit(&c, output.as_ref(), Some(Format::Dot), &mut r)?;
            Outcome::Done
        }
        Command::Db { action } => db(action, &mut r)?,
        Command::Factor { k, common } => {
            let c = reduce_factoring(k)?;
            r.set("k", k);
            r.set("size", c.size());
            match is_satisfiable_with(&c, None, default_solver().as_mut(), Some(common.timeout()?))? {
                Satisfiability::Satisfiable(x) => {
                    let (p, q) = decode_factors(k, &x)?;
                    r.set("result", "composite");
                    r.set("factors", format!("{k} = {p} * {q}"));
                    Outcome::Done
                }
                Satisfiability::Unsatisfiable => {
                    r.set("result", "prime");
                    Outcome::Negative
                }
                Satisfiability::Unknown => {
                    r.set("result", "unknown");
                    Outcome::Timeout
                }
            }
        }
    };
    r.print();
    Ok(outcome)
}

fn db(action: DbAction, r: &mut Report) -> Result<Outcome, CliError> {
    Ok(match action {
        DbAction::Build {
            common,
            slices,
            budget,
            output,
        } => {
            let basis: Basis = common.basis.into();
            let mut opts = BuildOptions::desk(basis, Duration::from_secs(budget));
            opts.query_timeout = common.timeout()?;
            opts.slices = match slices.as_str() {
                "desk" => opts.slices,
                "full" => (1..=3).flat_map(|m| (1..=3).map(move |n| (n, m))).collect(),
                list => list
                    .split(',')
                    .map(|s| {
                        let (n, m) = s.trim().split_once('x').ok_or_else(|| bad_slice(s))?;
                        Ok((n.parse().map_err(|_| bad_slice(s))?, m.parse().map_err(|_| bad_slice(s))?))
                    })
                    .collect::<Result<_, CliError>>()?,
            };
            let db = build_database_with(&opts)?;
            db.save(&output)?;
            r.set("written", output.display().to_string());
            r.set("entries", db.entries.len());
            r.set("complete", db.is_complete());
            slice_report(&db, r);
            if db.is_complete() {
                Outcome::Done
            } else {
                Outcome::Timeout
            }
        }
        DbAction::Stats { db } => {
            let db = Database::load(&db)?;
            r.set("basis", db.basis.to_string());
            r.set("entries", db.entries.len());
            r.set("complete", db.is_complete());
            slice_report(&db, r);
            Outcome::Done
        }
        DbAction::Lookup { db, table, out } => {
            let db = Database::load(&db)?;
            let target = target_of(&table)?;
            let hit = match target.to_total() {
                Some(t) => db.lookup(&t),
                None => db.lookup_partial(&target),
            };
            match hit {
                Some(c) => {
                    r.set("result", "hit");
                    r.set("size", c.size());
                    emit(&c, out.output.as_ref(), out.format, r)?;
                    Outcome::Done
                }
                None => {
                    r.set("result", "miss");
                    Outcome::Negative
                }
            }
        }
    })
}

fn bad_slice(s: &str) -> CliError {
    CliError::Usage(format!("bad slice `{s}`, expected NxM"))
}

fn slice_report(db: &Database, r: &mut Report) {
    for s in db.stats() {
        let hist: BTreeMap<String, serde_json::Value> = s
            .histogram
            .iter()
            .map(|(size, b)| {
                (
                    size.to_string(),
                    json!({"classes": b.classes, "functions": b.ordered, "distinct": b.distinct}),
                )
            })
            .collect();
        r.set(
            &format!("B{},{}", s.n, s.m),
            json!({
                "classes": s.classes,
                "built": s.built,
                "proven": s.proven,
                "functions": s.ordered,
                "distinct": s.distinct,
                "sizes": hist,
            }),
        );
    }
}

fn shape(c: &Circuit, r: &mut Report) {
    r.set("inputs", c.num_inputs());
    r.set("outputs", c.num_outputs());
    r.set("size", c.size());
}

fn parse_bits(s: &str) -> Result<Vec<bool>, CliError> {
    s.chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CliError::Usage(format!("`{s}` is not a bit string"))),
        })
        .collect()
}

fn target_of(t: &TableArgs) -> Result<PartialTruthTable, CliError> {
    match (&t.function, t.n) {
        (Some(f), Some(n)) => {
            if !t.tables.is_empty() {
                return Err(CliError::Usage("give either --table or --function".into()));
            }
            let f: NamedFunction = f.parse()?;
            Ok(named_function(f, n)?)
        }
        _ if !t.tables.is_empty() => Ok(PartialTruthTable::from_binary_columns(&t.tables)?),
        _ => Err(CliError::Usage("a target needs --table or --function with --n".into())),
    }
}
