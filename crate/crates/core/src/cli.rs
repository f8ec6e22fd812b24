//! Command-line front end. Every command produces a list of records that is
//! printed either as TSV (header line first) or as a JSON array of objects
//! with the same keys.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::azumaya::{
    brussel_normal_form, cyclic_presentation, is_irreducible, multiloop_oracle_d2, mumford_generators, parse_tuple,
    real_nullity1_table, MumfordDatum,
};
use crate::catalog::SimpleType;
use crate::cohomology::{glnz_action_on_h2, koszul_cohomology, ZnModule};
use crate::error::{Error, Result};
use crate::g2::{block_triple_count, classify_g2, glnz_quotient_g2, rost_image};
use crate::linalg::{glnz_generators, FinAb, FinAbHom};
use crate::nullity2::{classify_k, classify_r2, default_table_types, eala_table};
use crate::quadratic::{classify_od, count_od, subset_parametrization_count};
use crate::rank3::{classify_rank3, glnz_quotient_rank3, sl3_orbit_determinants, E8_QUOTIENT_NOTE};

#[derive(Parser, Debug)]
#[command(name = "loopclass", version, about = "Classify loop torsors and multiloop algebras by exact computation")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "tsv", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    /// Loop forms over the Laurent polynomial ring R_2.
    R2,
    /// Multiloop algebras up to isomorphism over the base field.
    K,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableName {
    Eala2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify loop forms of a simple group.
    Classify {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = 2)]
        nullity: usize,
        #[arg(long, value_enum, default_value = "r2")]
        over: Base,
    },
    /// Emit a classification table.
    Table {
        #[arg(value_enum)]
        name: TableName,
        /// Comma-separated types; defaults to the standard ranks.
        #[arg(long)]
        types: Option<String>,
    },
    /// Cohomology of Z^n with coefficients in a finite abelian group.
    Cohomology {
        /// Elementary divisors of the module, e.g. `2,4`.
        #[arg(long)]
        divisors: String,
        /// Action of one generator of Z^n as rows `a,b;c,d`; repeat per generator.
        #[arg(long = "action", allow_hyphen_values = true)]
        actions: Vec<String>,
        /// Number of generators when the action is trivial.
        #[arg(short = 'n', long)]
        nullity: Option<usize>,
        #[arg(long)]
        degree: usize,
    },
    /// Quadratic forms of given dimension over Laurent polynomials.
    Quadforms {
        #[arg(long)]
        dim: usize,
        #[arg(short = 'n')]
        n: usize,
        /// Print only the number of classes.
        #[arg(long)]
        count: bool,
    },
    /// Loop G2-torsors.
    G2 {
        #[arg(short = 'n')]
        n: usize,
        /// Group the classes into GL_n(Z)-orbits.
        #[arg(long)]
        quotient: bool,
        /// Compare block-triple classes with the full image of the Rost invariant.
        #[arg(long)]
        summary: bool,
    },
    /// Anisotropic nullity-3 classes for F4, E7 and E8.
    Exceptional3 {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        quotient: bool,
    },
    /// Mumford subgroups and loop Azumaya algebras.
    Azumaya {
        #[command(subcommand)]
        command: AzumayaCommand,
    },
    /// Normal forms.
    NormalForm {
        #[command(subcommand)]
        command: NormalFormCommand,
    },
    /// Run the built-in consistency checks.
    Verify,
}

#[derive(Subcommand, Debug)]
pub enum AzumayaCommand {
    /// Standard generators of H(s_1, ..., s_l) in PGL_d.
    Mumford {
        #[arg(long)]
        chain: String,
        #[arg(long)]
        degree: usize,
    },
    /// Nullity-1 classes over the reals.
    Real {
        #[arg(long)]
        degree: i64,
    },
    /// Check the quaternion presentation of the degree-2 multiloop algebra.
    Oracle {
        #[arg(long)]
        tuple: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum NormalFormCommand {
    /// Brussel normal form of a tuple in H(s_1, ..., s_l).
    Brussel(BrusselArgs),
}

#[derive(Args, Debug)]
pub struct BrusselArgs {
    #[arg(long)]
    chain: String,
    /// Semicolon-separated words in a1, b1, a2, b2, ..., e.g. `a;3b`.
    #[arg(long)]
    tuple: String,
}

/// Column names and rows of one command's output.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Records {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Records {
    fn new(columns: &[&str]) -> Self {
        Records { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect()))
                .collect(),
        )
    }

    pub fn to_tsv(&self) -> String {
        let mut out = self.columns.join("\t");
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(tsv_cell).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

/// Strings print bare, null as the empty cell, everything else as compact JSON.
pub fn tsv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn parse_type(s: &str) -> Result<SimpleType> {
    s.parse()
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("malformed integer list {s:?}"))))
        .collect()
}

fn parse_rows(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';').map(parse_ints).collect()
}

pub fn execute(command: &Command) -> Result<Records> {
    match command {
        Command::Classify { ty, nullity, over } => {
            if *nullity != 2 {
                return Err(Error::InvalidInput(format!("nullity {nullity} is not supported; use 2")));
            }
            let t = parse_type(ty)?;
            let records = match over {
                Base::R2 => classify_r2(t)?.iter().map(|f| f.record()).collect::<Vec<_>>(),
                Base::K => classify_k(t)?.iter().map(|f| f.record()).collect(),
            };
            let mut columns =
                vec!["absolute", "dynkin_tits", "out_pair", "h2_group", "h2_rep", "orbit_size", "quasisplit"];
            if *over == Base::K {
                columns.extend(["name", "tits_index", "relative"]);
            }
            let mut out = Records::new(&columns);
            for r in records {
                let v = serde_json::to_value(&r).expect("serializable");
                out.push(columns.iter().map(|c| v[*c].clone()).collect());
            }
            Ok(out)
        }
        Command::Table { name: TableName::Eala2, types } => {
            let types = match types {
                Some(s) => s.split(',').map(|x| parse_type(x.trim())).collect::<Result<Vec<_>>>()?,
                None => default_table_types(),
            };
            let mut out = Records::new(&["absolute", "name", "tits_index", "relative"]);
            for row in eala_table(&types)? {
                out.push(vec![
                    json!(row.absolute.to_string()),
                    json!(row.name),
                    json!(row.tits_index),
                    json!(row.relative),
                ]);
            }
            Ok(out)
        }
        Command::Cohomology { divisors, actions, nullity, degree } => {
            let group = FinAb::from_divisors(&parse_ints(divisors)?)?;
            let module = if actions.is_empty() {
                ZnModule::trivial(group, nullity.unwrap_or(2))
            } else {
                if nullity.is_some_and(|n| n != actions.len()) {
                    return Err(Error::InvalidInput("--nullity disagrees with the number of --action matrices".into()));
                }
                let sigmas = actions
                    .iter()
                    .map(|a| FinAbHom::new(group.clone(), group.clone(), parse_rows(a)?))
                    .collect::<Result<Vec<_>>>()?;
                ZnModule::new(group, sigmas)?
            };
            let h = koszul_cohomology(&module, *degree)?;
            let mut out = Records::new(&["degree", "group", "divisors", "order"]);
            out.push(vec![
                json!(degree),
                json!(h.group().to_string()),
                json!(h.group().divisors()),
                json!(h.group().order().to_string()),
            ]);
            Ok(out)
        }
        Command::Quadforms { dim, n, count } => {
            if *dim == 0 {
                return Err(Error::InvalidInput("dimension must be positive".into()));
            }
            if *count {
                let c = count_od(*dim, *n)?;
                let p = subset_parametrization_count(*dim, *n);
                let mut out = Records::new(&["count", "subset_parametrization_count", "discrepancy"]);
                out.push(vec![json!(c.to_string()), json!(p.to_string()), json!(c != p)]);
                return Ok(out);
            }
            let mut out = Records::new(&["anisotropic", "hyperbolic_rank", "label"]);
            for w in classify_od(*dim, *n)? {
                out.push(vec![json!(w.anisotropic_subsets()), json!(w.hyperbolic_rank), json!(w.label())]);
            }
            Ok(out)
        }
        Command::G2 { n, quotient, summary } => {
            if *summary {
                let classes = classify_g2(*n)?.len() - 1;
                let image = rost_image(*n)?.len();
                let orbits = glnz_quotient_g2(*n)?.len();
                let mut out = Records::new(&["n", "block_triples", "formula", "rost_image_nonzero", "orbits", "discrepancy"]);
                out.push(vec![
                    json!(n),
                    json!(classes),
                    json!(block_triple_count(*n).to_string()),
                    json!(image),
                    json!(orbits),
                    json!(image != classes),
                ]);
                return Ok(out);
            }
            if *quotient {
                let mut out = Records::new(&["orbit", "size", "representative", "invariant"]);
                for (k, orbit) in glnz_quotient_g2(*n)?.iter().enumerate() {
                    out.push(vec![
                        json!(k),
                        json!(orbit.len()),
                        json!(orbit[0].label()),
                        json!(orbit[0].invariant.to_string()),
                    ]);
                }
                return Ok(out);
            }
            let mut out = Records::new(&["class", "invariant"]);
            for c in classify_g2(*n)? {
                out.push(vec![json!(c.label()), json!(c.invariant.to_string())]);
            }
            Ok(out)
        }
        Command::Exceptional3 { ty, quotient } => {
            let t = parse_type(ty)?;
            if *quotient {
                let mut out = Records::new(&["type", "d", "units", "representative", "note"]);
                for o in glnz_quotient_rank3(t)? {
                    let note = if o.datum.d == 5 { json!(E8_QUOTIENT_NOTE) } else { Value::Null };
                    let rep = if o.units[0] == 1 {
                        format!("f_{},*(t1,t2,t3)", o.datum.d)
                    } else {
                        format!("f_{},*(t1,t2,t3^{})", o.datum.d, o.units[0])
                    };
                    out.push(vec![json!(t.to_string()), json!(o.datum.d), json!(o.units), json!(rep), note]);
                }
                return Ok(out);
            }
            let mut out = Records::new(&["type", "d", "unit", "class"]);
            for c in classify_rank3(t)? {
                out.push(vec![json!(t.to_string()), json!(c.datum.d), json!(c.unit), json!(c.label())]);
            }
            Ok(out)
        }
        Command::Azumaya { command } => match command {
            AzumayaCommand::Mumford { chain, degree } => {
                let datum = MumfordDatum::new(&parse_ints(chain)?)?;
                let gens = mumford_generators(datum.chain(), *degree)?;
                let irreducible = is_irreducible(&datum, *degree as i64);
                let mut out = Records::new(&["block", "s", "a", "b", "commutator", "irreducible"]);
                for (j, (a, b)) in gens.iter().enumerate() {
                    let c = a.commutator_phase(b)?.ok_or_else(|| Error::Invariant("generators do not commute up to a scalar".into()))?;
                    out.push(vec![
                        json!(j + 1),
                        json!(datum.chain()[j]),
                        json!(a.to_string()),
                        json!(b.to_string()),
                        json!(c.to_string()),
                        json!(irreducible),
                    ]);
                }
                Ok(out)
            }
            AzumayaCommand::Real { degree } => {
                let mut out = Records::new(&["class", "quaternion"]);
                for c in real_nullity1_table(*degree)? {
                    out.push(vec![json!(c.label), c.quaternion.map_or(Value::Null, Value::String)]);
                }
                Ok(out)
            }
            AzumayaCommand::Oracle { tuple } => {
                let ok = multiloop_oracle_d2(&parse_tuple(tuple, 1)?)?;
                if !ok {
                    return Err(Error::Invariant("quaternion relations fail for the multiloop algebra".into()));
                }
                let mut out = Records::new(&["tuple", "relations"]);
                out.push(vec![json!(tuple), json!("X^2 = t1, Y^2 = t2, YX = -XY")]);
                Ok(out)
            }
        },
        Command::NormalForm { command: NormalFormCommand::Brussel(args) } => {
            let datum = MumfordDatum::new(&parse_ints(&args.chain)?)?;
            let tuple = parse_tuple(&args.tuple, datum.blocks())?;
            let form = brussel_normal_form(&datum, &tuple)?;
            let presentation: Vec<String> = cyclic_presentation(&form).iter().map(|b| b.to_string()).collect();
            let mut out = Records::new(&["form", "n", "chain", "r1", "presentation", "primary_degrees"]);
            out.push(vec![
                json!(form.to_string()),
                json!(form.n),
                json!(form.chain),
                json!(form.r1),
                json!(presentation.join(" (x) ")),
                json!(form.primary_degrees()),
            ]);
            Ok(out)
        }
        Command::Verify => verify(),
    }
}

fn check(out: &mut Records, name: &str, f: impl FnOnce() -> Result<bool>) {
    let (status, detail) = match f() {
        Ok(true) => ("PASS", String::new()),
        Ok(false) => ("FAIL", String::new()),
        Err(e) => ("FAIL", e.to_string()),
    };
    out.push(vec![json!(name), json!(status), json!(detail)]);
}

/// Internal consistency checks that must all hold.
fn verify() -> Result<Records> {
    let mut out = Records::new(&["check", "status", "detail"]);
    check(&mut out, "h2_trivial_cyclic", || {
        for n in 1..=4 {
            let m = ZnModule::trivial(FinAb::cyclic(2 * n + 1), 2);
            if koszul_cohomology(&m, 2)?.group().divisors() != [2 * n + 1] {
                return Ok(false);
            }
        }
        Ok(true)
    });
    check(&mut out, "determinant_action", || {
        for d in 1..=12 {
            let m = ZnModule::trivial(FinAb::cyclic(d), 2);
            let h = koszul_cohomology(&m, 2)?;
            for g in glnz_generators(2) {
                let det = if g.det()? > 0.into() { 1 } else { -1 };
                if glnz_action_on_h2(&m, &g)? != FinAbHom::scalar(h.group(), det) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    check(&mut out, "nullity2_counts", || {
        let expected = [("A1", 2, 2), ("A4", 6, 4), ("A5", 10, 6), ("D4", 12, 5), ("D5", 9, 5), ("E6", 5, 3), ("E8", 1, 1)];
        for (t, r2, k) in expected {
            let t = parse_type(t)?;
            if classify_r2(t)?.len() != r2 || classify_k(t)?.len() != k {
                return Ok(false);
            }
        }
        Ok(true)
    });
    check(&mut out, "quadratic_counts", || {
        for d in 1..=4 {
            for n in 0..=2 {
                if classify_od(d, n)?.len() as u128 != count_od(d, n)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    });
    check(&mut out, "g2_counts", || {
        let counts: Vec<usize> = (2..=4).map(|n| classify_g2(n).map(|c| c.len() - 1)).collect::<Result<_>>()?;
        Ok(counts == [0, 1, 7] && glnz_quotient_g2(4)?.len() == 2)
    });
    check(&mut out, "rank3_counts", || {
        let counts: Vec<usize> =
            ["F4", "E7", "E8"].iter().map(|t| classify_rank3(parse_type(t)?).map(|c| c.len())).collect::<Result<_>>()?;
        Ok(counts == [2, 2, 6] && sl3_orbit_determinants(3)? == [1, 2])
    });
    check(&mut out, "brussel_examples", || {
        let five = MumfordDatum::new(&[5])?;
        let a = brussel_normal_form(&five, &parse_tuple("a;3b", 1)?)?;
        let b = brussel_normal_form(&five, &parse_tuple("2a;b", 1)?)?;
        Ok(a.to_string() == "A(2,5)" && a == b)
    });
    check(&mut out, "multiloop_d2", || multiloop_oracle_d2(&parse_tuple("a;b", 1)?));
    check(&mut out, "real_nullity1", || {
        Ok(real_nullity1_table(3)?.len() == 1 && real_nullity1_table(2)?.len() == 4)
    });
    Ok(out)
}

/// Exit status for an error: 3 for a violated internal invariant, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => 3,
        _ => 2,
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// result. Returns the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli.command) {
        Ok(records) => {
            let text = match cli.format {
                Format::Tsv => records.to_tsv(),
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&records.to_json()).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            if stdout.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            if matches!(cli.command, Command::Verify) && records.rows.iter().any(|r| r[1] != json!("PASS")) {
                return 3;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
