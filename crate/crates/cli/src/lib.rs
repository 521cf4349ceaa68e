//! The `gra` command line. [`run`] takes the arguments and output streams so
//! tests can drive it in-process.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use gra_core::builders::{build_cyclic_frame, build_power_frame, check_cyclic_kappa, KappaMatrix};
use gra_core::format::{emit_frame, parse_frame};
use gra_core::frame::CheckMode;
use gra_core::laws::verify;
use gra_core::{validate_table, AtomIndex, Frame, GroupRelationAlgebra};

#[derive(Parser, Debug)]
#[command(
    name = "gra",
    version,
    about = "Full group relation algebras on finite frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the frame conditions.
    Validate {
        file: String,
        /// Check every pair and triple.
        #[arg(long, conflicts_with = "reduced")]
        full: bool,
        /// Check pairs x<y and triples x<y<z only (the default).
        #[arg(long)]
        reduced: bool,
        /// Treat the file as a κ matrix for cyclic groups of these
        /// comma-separated orders and check the divisor conditions.
        #[arg(long, value_name = "ORDERS")]
        cyclic: Option<String>,
    },
    /// List the atoms with their cardinalities.
    Atoms {
        file: String,
        /// Also dump each atom as sorted "a b" pairs of global ids.
        #[arg(long)]
        pairs: bool,
        /// Show the coset each atom index stands for.
        #[arg(long)]
        cosets: bool,
    },
    /// Converse or composition of atoms.
    Op(OpArgs),
    /// The full composition table and converse column.
    Table { file: String },
    /// Measures of the subidentity atoms.
    Measure { file: String },
    /// Split the frame into its simple components.
    Decompose { file: String },
    /// Generate a frame file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run every law against the concrete relations.
    Verify { file: String },
}

#[derive(Args, Debug)]
struct OpArgs {
    file: String,
    #[command(subcommand)]
    op: OpKind,
}

#[derive(Subcommand, Debug)]
enum OpKind {
    /// Converse of the atom ((x,y),α).
    Conv { x: String, y: String, alpha: usize },
    /// Composition ((x,y),α) ; ((y,z),β).
    Comp {
        x: String,
        y: String,
        alpha: usize,
        z: String,
        beta: usize,
        /// Recompute with explicit relations and compare.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Cyclic groups with quotient sizes from a κ matrix file.
    Cyclic {
        /// Comma-separated group orders.
        orders: String,
        kappa_file: String,
    },
    /// Copies of one group glued along a normal subgroup.
    Power {
        table_file: String,
        /// Comma-separated elements of the normal subgroup N.
        n_elems: String,
        /// Number of copies.
        index_size: usize,
        /// Blocks as "0,1|2".
        blocks: String,
    },
}

/// Failure with an exit code and a message for stderr.
struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<(String, i32), Failure>;

/// Runs the CLI. Exit codes: 0 success, 1 a failed check or invalid input
/// data, 2 a parse or usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Validate {
            file,
            cyclic: Some(orders),
            ..
        } => validate_kappa(&file, &orders),
        Command::Validate { file, full, .. } => validate(&file, full),
        Command::Atoms {
            file,
            pairs,
            cosets,
        } => atoms(&file, pairs, cosets),
        Command::Op(OpArgs { file, op }) => operation(&file, op),
        Command::Table { file } => table(&file),
        Command::Measure { file } => measure(&file),
        Command::Decompose { file } => decompose(&file),
        Command::Gen(GenCommand::Cyclic { orders, kappa_file }) => gen_cyclic(&orders, &kappa_file),
        Command::Gen(GenCommand::Power {
            table_file,
            n_elems,
            index_size,
            blocks,
        }) => gen_power(&table_file, &n_elems, index_size, &blocks),
        Command::Verify { file } => verify_file(&file),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("{path}: {e}")))
}

fn load(path: &str) -> Result<Frame, Failure> {
    parse_frame(&read(path)?).map_err(|e| fail(2, format!("{path}: parse error: {e}")))
}

fn load_algebra(path: &str) -> Result<GroupRelationAlgebra, Failure> {
    GroupRelationAlgebra::new(load(path)?).map_err(|e| fail(1, format!("{path}: {e}")))
}

fn validate(path: &str, full: bool) -> Outcome {
    let frame = load(path)?;
    let report = if full {
        frame.check_frame_full()
    } else {
        frame.check_frame_reduced()
    };
    let mut s = String::new();
    let mode = match report.mode {
        CheckMode::Full => "full",
        CheckMode::Reduced => "reduced",
    };
    let _ = writeln!(s, "mode: {mode}");
    let _ = writeln!(
        s,
        "groups: {}, blocks: {}",
        frame.len(),
        frame.blocks().len()
    );
    for (c, n) in ["(i)", "(ii)", "(iii)", "(iv)"].iter().zip(report.checked) {
        let _ = writeln!(s, "condition {c}: {n} checked");
    }
    for v in &report.violations {
        let ids: Vec<&str> = v.indices.iter().map(|&i| frame.id(i)).collect();
        let _ = writeln!(
            s,
            "violation: condition {} at ({}): {}",
            v.condition,
            ids.join(","),
            v.detail
        );
    }
    let passed = report.passed();
    let _ = writeln!(s, "{}", if passed { "PASS" } else { "FAIL" });
    Ok((s, if passed { 0 } else { 1 }))
}

fn validate_kappa(path: &str, orders: &str) -> Outcome {
    let orders = parse_list(orders, "orders")?;
    let kappa = parse_matrix(path)?;
    match check_cyclic_kappa(&orders, &kappa) {
        Ok(blocks) => {
            let mut s = String::new();
            for b in blocks {
                let ids: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "block {}", ids.join(" "));
            }
            s.push_str("PASS\n");
            Ok((s, 0))
        }
        Err(e) => Ok((format!("{e}\nFAIL\n"), 1)),
    }
}

fn atoms(path: &str, pairs: bool, cosets: bool) -> Outcome {
    let alg = load_algebra(path)?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# ordinal atom cardinality{}",
        if cosets { " coset" } else { "" }
    );
    for (o, &a) in alg.atoms().iter().enumerate() {
        let rel = alg.materialize_atom(a);
        let _ = write!(s, "{o} {} {}", alg.atom_label(a), rel.len());
        if cosets {
            let _ = write!(s, " {}", alg.atom_coset(a));
        }
        s.push('\n');
    }
    if pairs {
        for &a in alg.atoms() {
            let _ = writeln!(s, "atom {}", alg.atom_label(a));
            s.push_str(&alg.materialize_atom(a).dump_pairs());
        }
    }
    Ok((s, 0))
}

fn atom_list(alg: &GroupRelationAlgebra, atoms: &[AtomIndex]) -> String {
    if atoms.is_empty() {
        return "{}".into();
    }
    atoms
        .iter()
        .map(|&a| alg.atom_label(a))
        .collect::<Vec<_>>()
        .join(" ")
}

fn lookup(
    alg: &GroupRelationAlgebra,
    x: &str,
    y: &str,
    alpha: usize,
) -> Result<AtomIndex, Failure> {
    let frame = alg.frame();
    let idx = |id: &str| {
        frame
            .index_of_id(id)
            .ok_or_else(|| fail(1, format!("unknown group id `{id}`")))
    };
    let a = AtomIndex::new(idx(x)?, idx(y)?, alpha);
    alg.check_atom(a)
        .map_err(|_| fail(1, format!("no atom (({x},{y}),{alpha}) in this frame")))?;
    Ok(a)
}

fn operation(path: &str, op: OpKind) -> Outcome {
    let alg = load_algebra(path)?;
    match op {
        OpKind::Conv { x, y, alpha } => {
            let a = lookup(&alg, &x, &y, alpha)?;
            Ok((format!("{}\n", alg.atom_label(alg.converse_atom(a))), 0))
        }
        OpKind::Comp {
            x,
            y,
            alpha,
            z,
            beta,
            check,
        } => {
            let a = lookup(&alg, &x, &y, alpha)?;
            let b = lookup(&alg, &y, &z, beta)?;
            let c = alg.compose_atoms(a, b);
            let mut s = format!("{}\n", atom_list(&alg, &alg.atoms_of(&c)));
            let mut code = 0;
            if check {
                let concrete = alg.materialize_atom(a).compose(alg.materialize_atom(b));
                if alg.materialize(&c).unwrap() == concrete {
                    s.push_str("MATCH\n");
                } else {
                    s.push_str("MISMATCH\n");
                    code = 1;
                }
            }
            Ok((s, code))
        }
    }
}

fn table(path: &str) -> Outcome {
    let alg = load_algebra(path)?;
    let atoms = alg.atoms();
    let mut s = String::new();
    s.push_str("# atoms\n");
    for (o, &a) in atoms.iter().enumerate() {
        let _ = writeln!(s, "{o} {}", alg.atom_label(a));
    }
    s.push_str("# row ; column = cells by ordinal, `-` for empty; last column is the converse\n");
    for (o, &a) in atoms.iter().enumerate() {
        let _ = write!(s, "{o}:");
        for &b in atoms {
            let c = alg.compose_atoms(a, b);
            if c.is_empty() {
                s.push_str(" -");
            } else {
                let ords: Vec<String> = c.ordinals().map(|o| o.to_string()).collect();
                let _ = write!(s, " {{{}}}", ords.join(","));
            }
        }
        let conv = alg.ordinal(alg.converse_atom(a)).unwrap();
        let _ = writeln!(s, " | {conv}");
    }
    Ok((s, 0))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn measure(path: &str) -> Outcome {
    let alg = load_algebra(path)?;
    let report = alg.measure_report();
    let mut s = String::new();
    for e in &report.entries {
        let _ = writeln!(
            s,
            "group {} subidentity {} measure {} bijections={}",
            alg.frame().id(e.x),
            alg.atom_label(e.subidentity),
            e.measure,
            yes_no(e.all_bijections)
        );
    }
    let _ = writeln!(s, "pair-dense: {}", yes_no(report.pair_dense));
    let _ = writeln!(s, "singleton-dense: {}", yes_no(report.singleton_dense));
    Ok((s, 0))
}

fn decompose(path: &str) -> Outcome {
    let alg = load_algebra(path)?;
    let parts = alg.decompose();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "atoms: {}, components: {}, simple={}",
        alg.atoms().len(),
        parts.len(),
        yes_no(alg.is_simple())
    );
    for (i, p) in parts.iter().enumerate() {
        let _ = writeln!(
            s,
            "component {i}: indices {}, atoms {}, simple={}",
            p.frame().ids().join(" "),
            p.atoms().len(),
            yes_no(p.is_simple())
        );
    }
    Ok((s, 0))
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| fail(2, format!("{what}: `{t}` is not a non-negative integer")))
        })
        .collect()
}

fn parse_matrix(path: &str) -> Result<Vec<Vec<usize>>, Failure> {
    let text = read(path)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| fail(2, format!("{path}: line {}: bad entry `{t}`", i + 1)))
            })
            .collect::<Result<Vec<usize>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn gen_cyclic(orders: &str, kappa_file: &str) -> Outcome {
    let orders = parse_list(orders, "orders")?;
    let kappa: KappaMatrix = parse_matrix(kappa_file)?;
    let frame = build_cyclic_frame(&orders, &kappa).map_err(|e| fail(1, e.to_string()))?;
    let list: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
    let frame = frame.with_comments(vec![format!(
        "cyclic frame, orders {}, each generated by 1",
        list.join(",")
    )]);
    Ok((emit_frame(&frame), 0))
}

fn gen_power(table_file: &str, n_elems: &str, index_size: usize, blocks: &str) -> Outcome {
    let rows = parse_matrix(table_file)?;
    let m = validate_table(&rows).map_err(|e| fail(1, format!("{table_file}: {e}")))?;
    let n = m
        .set(parse_list(n_elems, "N")?)
        .map_err(|e| fail(1, e.to_string()))?;
    let blocks = blocks
        .split('|')
        .map(|b| parse_list(b, "blocks"))
        .collect::<Result<Vec<_>, _>>()?;
    let frame =
        build_power_frame(&m, &n, index_size, &blocks).map_err(|e| fail(1, e.to_string()))?;
    let frame = frame.with_comments(vec![format!(
        "power frame, {index_size} copies of a group of order {}, N = {n}",
        m.order()
    )]);
    Ok((emit_frame(&frame), 0))
}

fn verify_file(path: &str) -> Outcome {
    let alg = load_algebra(path)?;
    let report = verify(&alg);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "groups: {}, atoms: {}, base points: {}",
        alg.frame().len(),
        alg.atoms().len(),
        alg.base().size()
    );
    for law in &report.laws {
        let _ = writeln!(s, "{law}");
    }
    let passed = report.passed();
    let _ = writeln!(s, "{}", if passed { "PASS" } else { "FAIL" });
    Ok((s, if passed { 0 } else { 1 }))
}
