//! Command-line front end for the `trivsrc` binary.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::blocks::{block_partition, Block};
use crate::chartab::{
    builtin_table, dihedral_character_table, dixon_character_table, CharTable, CharTableJson,
};
use crate::domestic::{transport, DomesticBlockInput, VertexKind};
use crate::error::Error;
use crate::permgroup::{builtin_group, GroupFile, PermGroup};
use crate::tsct::{
    assemble_tsct, d4v_identities, tsct_d4v, verify_tsct, Check, TSCTable, TsctJson, VerifyReport,
};

pub const EXIT_OTHER: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_CLASSIFICATION: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "trivsrc",
    version,
    about = "Character tables, 2-blocks and trivial source character tables at p = 2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ordinary character table.
    Chartab(SourceArgs),
    /// 2-block partition with defects.
    Blocks(SourceArgs),
    /// Trivial source character table (verified before output).
    Tsct(SourceArgs),
    /// Trivial source characters of one Klein-four defect block from a block-input JSON file.
    Transport(TransportArgs),
    /// Runs the table invariants and reports each check.
    Verify(SourceArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct SourceArgs {
    /// Builtin group: v4, a4, a5, ex972.
    #[arg(long, group = "source")]
    pub builtin: Option<String>,
    /// Group file: {"degree": n, "generators": [[1-based images]...]}.
    #[arg(long, group = "source")]
    pub group: Option<PathBuf>,
    /// Character table file (or, for verify, a trivial source table file).
    #[arg(long, group = "source")]
    pub table: Option<PathBuf>,
    /// Dihedral group of order 4v, v odd >= 3.
    #[arg(long, group = "source")]
    pub d4v: Option<usize>,
    /// With --d4v: use the closed-form trivial source table.
    #[arg(long, requires = "d4v")]
    pub closed_form: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TransportArgs {
    /// Block-input JSON: {"degrees": [...], "involutions": [{"class", "values"}], "fusion": "I"|"II"|"III"}.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) | Error::OrderBound(_) => EXIT_UNSUPPORTED,
            Error::Parse(_) | Error::Cyc(_) => EXIT_PARSE,
            Error::Classification(_) | Error::Ambiguous(_) => EXIT_CLASSIFICATION,
            _ => EXIT_OTHER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_OTHER,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")).into())
}

fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

/// Ordinary table for a group: the classical layout for the named small
/// groups and the dihedral family, Dixon's algorithm otherwise.
pub fn table_for_group(g: PermGroup) -> crate::Result<CharTable> {
    let same = |h: &PermGroup| {
        h.order() == g.order()
            && h.degree() == g.degree()
            && g.elements().iter().all(|p| h.index_of(p).is_some())
    };
    if let Some(name) = g.name() {
        if let Ok(h) = builtin_group(name) {
            if same(&h) {
                let t = match name {
                    "v4" | "a4" | "a5" => builtin_table(name).ok(),
                    _ => name
                        .strip_prefix("d4v:")
                        .and_then(|v| v.parse().ok())
                        .and_then(|v| dihedral_character_table(v).ok()),
                };
                if let Some(t) = t {
                    return Ok(t);
                }
            }
        }
    }
    dixon_character_table(Arc::new(g))
}

enum Source {
    Table(CharTable),
    Tsct(Box<TSCTable>),
}

fn resolve(a: &SourceArgs) -> CliResult<Source> {
    if let Some(name) = &a.builtin {
        let t = match name.as_str() {
            "v4" | "a4" | "a5" => builtin_table(name)?,
            "ex972" => dixon_character_table(Arc::new(builtin_group(name)?))?,
            _ => {
                return Err(
                    Error::Invalid(format!("unknown builtin {name} (v4, a4, a5, ex972)")).into(),
                )
            }
        };
        return Ok(Source::Table(t));
    }
    if let Some(v) = a.d4v {
        return Ok(Source::Table(dihedral_character_table(v)?));
    }
    if let Some(p) = &a.group {
        let gf: GroupFile = parse_json(&read(p)?, "group file")?;
        return Ok(Source::Table(table_for_group(gf.build()?)?));
    }
    if let Some(p) = &a.table {
        let text = read(p)?;
        let v: serde_json::Value = parse_json(&text, "table file")?;
        if v.get("vertices").is_some() {
            let j: TsctJson = parse_json(&text, "trivial source table file")?;
            return Ok(Source::Tsct(Box::new(TSCTable::from_json(&j)?)));
        }
        let j: CharTableJson = parse_json(&text, "character table file")?;
        return Ok(Source::Table(CharTable::from_json(&j)?));
    }
    Err(Failure {
        code: EXIT_OTHER,
        message: "one of --builtin, --group, --table, --d4v is required".into(),
    })
}

fn need_table(s: Source) -> CliResult<CharTable> {
    match s {
        Source::Table(t) => Ok(t),
        Source::Tsct(t) => Ok(t.table),
    }
}

fn build_tsct(a: &SourceArgs) -> CliResult<TSCTable> {
    if a.closed_form {
        return Ok(tsct_d4v(a.d4v.expect("clap enforces --d4v"))?);
    }
    match resolve(a)? {
        Source::Tsct(t) => Ok(*t),
        Source::Table(t) => Ok(assemble_tsct(&t)?),
    }
}

fn full_report(a: &SourceArgs, t: &TSCTable) -> VerifyReport {
    let mut r = verify_tsct(t);
    if a.closed_form {
        let (e33, half) = d4v_identities(t);
        r.checks.push(Check {
            name: "d4v_T33_eq_T31",
            passed: e33,
            witness: (!e33).then(|| "T33 differs from T31".into()),
        });
        r.checks.push(Check {
            name: "d4v_T31_half_T11",
            passed: half,
            witness: (!half).then(|| "2·T31 is not a row permutation of T11".into()),
        });
    }
    r
}

pub fn render_blocks(t: &CharTable, blocks: &[Block], f: Format) -> String {
    let names = |b: &Block| {
        b.irr
            .iter()
            .map(|&i| t.names()[i].clone())
            .collect::<Vec<_>>()
    };
    match f {
        Format::Json => {
            #[derive(Serialize)]
            struct J<'a> {
                index: usize,
                principal: bool,
                defect: u32,
                characters: Vec<usize>,
                names: Vec<String>,
                #[serde(skip_serializing_if = "Option::is_none")]
                involution_class: Option<&'a str>,
            }
            let v: Vec<J> = blocks
                .iter()
                .enumerate()
                .map(|(k, b)| J {
                    index: k,
                    principal: k == 0,
                    defect: b.defect,
                    characters: b.irr.iter().map(|i| i + 1).collect(),
                    names: names(b),
                    involution_class: b.involution_class.map(|c| t.classes()[c].name.as_str()),
                })
                .collect();
            to_json(&v)
        }
        Format::Csv => {
            let mut out = String::from("block,defect,characters,involution_class\n");
            for (k, b) in blocks.iter().enumerate() {
                let inv = b
                    .involution_class
                    .map(|c| t.classes()[c].name.clone())
                    .unwrap_or_default();
                out.push_str(&format!("B{k},{},{},{inv}\n", b.defect, names(b).join(" ")));
            }
            out
        }
        Format::Text => {
            let mut out = format!("{} blocks\n", blocks.len());
            for (k, b) in blocks.iter().enumerate() {
                out.push_str(&format!(
                    "B{k}  defect {}  {}",
                    b.defect,
                    names(b).join(", ")
                ));
                if k == 0 {
                    out.push_str("  (principal)");
                }
                if let Some(c) = b.involution_class {
                    out.push_str(&format!("  involution class {}", t.classes()[c].name));
                }
                out.push('\n');
            }
            out
        }
    }
}

pub fn render_transport(input: &DomesticBlockInput, f: Format) -> CliResult<String> {
    let data = transport(input)?;
    let chars = input.characters;
    let class_of = |k: Option<usize>| k.map(|k| input.involutions[k].name.clone());
    Ok(match f {
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                vertex: VertexKind,
                label: String,
                coeffs: [i64; 4],
                local: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                involution_class: Option<String>,
            }
            #[derive(Serialize)]
            struct J {
                morita_class: String,
                rows: Vec<Row>,
                #[serde(skip_serializing_if = "Vec::is_empty")]
                notes: Vec<String>,
            }
            to_json(&J {
                morita_class: data.morita_class.to_string(),
                rows: data
                    .rows
                    .iter()
                    .map(|r| Row {
                        vertex: r.vertex,
                        label: r.label(chars),
                        coeffs: r.coeffs,
                        local: r.local_label,
                        involution_class: class_of(r.involution),
                    })
                    .collect(),
                notes: data.notes.clone(),
            })
        }
        Format::Csv => {
            let mut out = String::from("vertex,character,local,involution_class\n");
            for r in &data.rows {
                out.push_str(&format!(
                    "{:?},{},{},{}\n",
                    r.vertex,
                    r.label(chars),
                    r.local_label.map(|l| l.to_string()).unwrap_or_default(),
                    class_of(r.involution).unwrap_or_default()
                ));
            }
            out
        }
        Format::Text => {
            let mut out = format!("Morita class: {}\n", data.morita_class);
            for (kind, title) in [
                (VertexKind::Trivial, "trivial vertex"),
                (VertexKind::C2, "C2 vertex"),
                (VertexKind::Maximal, "maximal vertex"),
            ] {
                let rows: Vec<String> = data
                    .rows
                    .iter()
                    .filter(|r| r.vertex == kind)
                    .map(|r| match class_of(r.involution) {
                        Some(c) => format!("{} [{c}]", r.label(chars)),
                        None => r.label(chars),
                    })
                    .collect();
                out.push_str(&format!("{title}: {}\n", rows.join(", ")));
            }
            for n in &data.notes {
                out.push_str(&format!("note: {n}\n"));
            }
            out
        }
    })
}

fn render_tsct(t: &TSCTable, f: Format) -> String {
    match f {
        Format::Text => t.render_text(),
        Format::Csv => t.render_csv(),
        Format::Json => to_json(&t.to_json()),
    }
}

fn render_chartab(t: &CharTable, f: Format) -> String {
    match f {
        Format::Text => t.render_text(),
        Format::Csv => t.render_csv(),
        Format::Json => to_json(&t.to_json()),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    let res = match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure {
        code: EXIT_OTHER,
        message: format!("write failed: {e}"),
    })
}

/// Executes a parsed command; the rendered output is complete before anything is written.
pub fn execute(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Chartab(a) => {
            let t = need_table(resolve(a)?)?;
            emit(&a.out, &render_chartab(&t, a.format))
        }
        Command::Blocks(a) => {
            let t = need_table(resolve(a)?)?;
            let b = block_partition(&t)?;
            emit(&a.out, &render_blocks(&t, &b, a.format))
        }
        Command::Tsct(a) => {
            let t = build_tsct(a)?;
            let r = full_report(a, &t);
            if !r.all_passed() {
                return Err(Failure {
                    code: EXIT_VERIFY,
                    message: format!("verification failed\n{}", r.render()),
                });
            }
            emit(&a.out, &render_tsct(&t, a.format))
        }
        Command::Verify(a) => {
            let t = build_tsct(a)?;
            let r = full_report(a, &t);
            let text = match a.format {
                Format::Json => to_json(&r),
                _ => r.render(),
            };
            emit(&a.out, &text)?;
            if r.all_passed() {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_VERIFY,
                    message: "verification failed".into(),
                })
            }
        }
        Command::Transport(a) => {
            let input: DomesticBlockInput = parse_json(&read(&a.input)?, "block input")?;
            let text = render_transport(&input, a.format)?;
            emit(&a.out, &text)
        }
    }
}

/// Parses arguments, runs, prints errors to stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
