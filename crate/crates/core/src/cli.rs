//! The `weylrank` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bredon::{self, library, CoefficientSystem, WcwDocument};
use crate::error::{Error, Result};
use crate::ktheory::{self, Arrangement, KTheoryReport};
use crate::rep_ring::{transition_f_to_g, SteinbergFamily};
use crate::root_system::{build_root_datum, Weight, WeylGroup};
use crate::weyl::{check_coset_intersection, coset_cells, SubgroupFamily, SubgroupSpec};

/// Seed used for randomized rank witnesses unless `--seed` is given.
pub const DEFAULT_SEED: u64 = 1729;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "weylrank", version, about = "Weyl group combinatorics and equivariant rank computations")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "tsv", global = true)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    /// Write a JSON run manifest to this path.
    #[arg(long, global = true)]
    pub emit_manifest: Option<PathBuf>,
    /// Write the report to this path instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simple roots, positive roots, fundamental weights and |W|.
    Roots { datum: String },
    /// Steinberg and compatible bases for every member of a family.
    Steinberg(FamilyArgs),
    /// Minimal coset representatives, the cell partition and the CIP check.
    Cosets(FamilyArgs),
    /// Bredon cohomology ranks of a W-CW complex.
    Bredon(BredonArgs),
    /// Rank formulas and chamber counts.
    Ktheory(KtheoryArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    pub datum: String,
    /// `chain`, `parabolic`, `full`, or members separated by `;`, each either
    /// `{i,j,..}` (simple-root indices from 0) or `<root|root>` (generating roots
    /// in fundamental-weight coordinates).
    #[arg(long, default_value = "chain")]
    pub family: String,
}

#[derive(Debug, Args)]
pub struct BredonArgs {
    /// Path to a `wcw/1` JSON document, or `bundled:<point|circle|torus>`.
    #[arg(long)]
    pub complex: String,
    /// Coefficient system: `rt` or `zw`.
    #[arg(long, default_value = "rt")]
    pub system: String,
    /// A `±1` value per lattice coordinate, comma separated; repeatable.
    /// Defaults to the all-ones point.
    #[arg(long, allow_hyphen_values = true)]
    pub probe: Vec<String>,
}

#[derive(Debug, Args)]
pub struct KtheoryArgs {
    /// Betti numbers of the fixed-point data, comma separated.
    #[arg(long)]
    pub betti: Option<String>,
    /// Rank of G: tables for the sphere and compactification of its adjoint representation.
    #[arg(long)]
    pub sphere_adjoint: Option<usize>,
    /// `n,r` with `Σ betti` taken from `--betti` (default a point).
    #[arg(long)]
    pub inertia: Option<String>,
    /// `n,r`: parity table for the commuting variety.
    #[arg(long)]
    pub commuting_variety: Option<String>,
    /// File of hyperplane normals, one comma-separated integer vector per line.
    #[arg(long)]
    pub arrangement: Option<PathBuf>,
    /// Root arrangement of a datum.
    #[arg(long)]
    pub root_arrangement: Option<String>,
    /// Product descriptor such as `SU3xSp2xU1`, tested for membership in family P.
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything needed to reproduce a run byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub seed: u64,
    pub version: String,
    pub outputs: Vec<String>,
}

struct Report {
    tsv: String,
    structured: Value,
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, &args) {
        Ok(bytes) => match &cli.output {
            Some(_) => 0,
            None => {
                let _ = stdout.write_all(&bytes);
                0
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_internal() {
                3
            } else {
                2
            }
        }
    }
}

fn execute(cli: &Cli, args: &[OsString]) -> Result<Vec<u8>> {
    let mut inputs = Vec::new();
    let report = match &cli.command {
        Command::Roots { datum } => cmd_roots(datum)?,
        Command::Steinberg(a) => cmd_steinberg(&a.datum, &a.family)?,
        Command::Cosets(a) => cmd_cosets(&a.datum, &a.family)?,
        Command::Bredon(a) => cmd_bredon(a, cli.seed, &mut inputs)?,
        Command::Ktheory(a) => cmd_ktheory(a, &mut inputs)?,
    };
    let bytes = match cli.format {
        Format::Tsv => report.tsv.into_bytes(),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&report.structured)?;
            s.push('\n');
            s.into_bytes()
        }
    };
    if let Some(path) = &cli.output {
        std::fs::write(path, &bytes)?;
    }
    if let Some(path) = &cli.emit_manifest {
        let manifest = RunManifest {
            command: args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
            inputs,
            seed: cli.seed,
            version: format!("weylrank {}", env!("CARGO_PKG_VERSION")),
            outputs: vec![cli.output.as_ref().map_or("-".into(), |p| p.display().to_string())],
        };
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(bytes)
}

/// The `steinberg` table as the CLI prints it.
pub fn steinberg_table(datum: &str, family: &str, format: Format) -> Result<String> {
    let report = cmd_steinberg(datum, family)?;
    Ok(match format {
        Format::Tsv => report.tsv,
        Format::Structured => serde_json::to_string_pretty(&report.structured)? + "\n",
    })
}

fn digest(path: &Path) -> Result<(String, InputDigest)> {
    let bytes = std::fs::read(path)?;
    let sha256 = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    let text = String::from_utf8(bytes).map_err(|_| Error::Invalid(format!("{} is not UTF-8", path.display())))?;
    Ok((text, InputDigest { path: path.display().to_string(), sha256 }))
}

fn weight_json(w: &Weight) -> Value {
    json!(w.0)
}

fn cmd_roots(datum: &str) -> Result<Report> {
    let group = WeylGroup::from_spec(datum)?;
    let d = group.datum();
    let mut tsv = String::new();
    writeln!(tsv, "datum\t{}", d.type_spec).unwrap();
    writeln!(tsv, "lattice_rank\t{}", d.lattice_rank).unwrap();
    writeln!(tsv, "weyl_order\t{}", group.order()).unwrap();
    for (i, a) in d.simple_roots.iter().enumerate() {
        writeln!(tsv, "simple_root\t{}\t{a}", i + 1).unwrap();
    }
    for (a, c) in d.positive_roots.iter().zip(&d.positive_root_coords) {
        let c: Vec<String> = c.iter().map(i64::to_string).collect();
        writeln!(tsv, "positive_root\t{a}\t{}", c.join(",")).unwrap();
    }
    for (i, w) in d.fundamental_weights.iter().enumerate() {
        writeln!(tsv, "fundamental_weight\t{}\t{w}", i + 1).unwrap();
    }
    let structured = json!({
        "datum": d.type_spec.to_string(),
        "lattice_rank": d.lattice_rank,
        "weyl_order": group.order(),
        "cartan": d.cartan,
        "simple_roots": d.simple_roots.iter().map(weight_json).collect::<Vec<_>>(),
        "positive_roots": d.positive_roots.iter().map(weight_json).collect::<Vec<_>>(),
        "positive_root_coords": d.positive_root_coords,
        "fundamental_weights": d.fundamental_weights.iter().map(weight_json).collect::<Vec<_>>(),
    });
    Ok(Report { tsv, structured })
}

/// Parses the `--family` syntax.
pub fn parse_family(group: &WeylGroup, text: &str) -> Result<SubgroupFamily> {
    let r = group.datum().semisimple_rank();
    match text.trim() {
        "chain" => return Ok(SubgroupFamily::standard_chain(group)),
        "parabolic" => return Ok(SubgroupFamily::parabolic(group)),
        "full" => return SubgroupFamily::from_specs(group, &[SubgroupSpec::Parabolic((0..r).collect())]),
        _ => {}
    }
    let mut specs = Vec::new();
    let mut offset = 0;
    for token in text.split(';') {
        let t = token.trim();
        let err = |m: &str| Error::Parse { position: offset, message: format!("{m} in `{t}`") };
        if let Some(inner) = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
            let idx = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| err("bad simple-root index")))
                .collect::<Result<Vec<_>>>()?;
            specs.push(SubgroupSpec::Parabolic(idx));
        } else if let Some(inner) = t.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            let roots = inner
                .split('|')
                .map(|root| {
                    root.split(',')
                        .map(|x| x.trim().parse::<i64>().map_err(|_| err("bad root coordinate")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            specs.push(SubgroupSpec::Roots(roots));
        } else {
            return Err(err("expected `{..}` or `<..>`"));
        }
        offset += token.len() + 1;
    }
    SubgroupFamily::from_specs(group, &specs)
}

fn cmd_steinberg(datum: &str, family_text: &str) -> Result<Report> {
    let group = WeylGroup::from_spec(datum)?;
    let family = parse_family(&group, family_text)?;
    let sf = SteinbergFamily::new(&group, family)?;
    let mut tsv = String::from("member\tsubgroup\tv\tcell\tf\tg\n");
    let mut members = Vec::new();
    for i in 0..sf.family().len() {
        let label = sf.family().member(i).label().to_string();
        let mut rows = Vec::new();
        for (v, f) in sf.f_basis(i) {
            let cell = sf.owner(v).ok_or_else(|| Error::invariant("representative without a cell"))?;
            let g = sf.g(v).ok_or_else(|| Error::invariant("missing g"))?;
            let word = group.word_string(v);
            writeln!(tsv, "{i}\t{label}\t{word}\t{cell}\t{f}\t{g}").unwrap();
            rows.push(json!({"v": word, "cell": cell, "f": f.to_string(), "g": g.to_string()}));
        }
        let t = transition_f_to_g(&group, &sf, i)?;
        members.push(json!({"member": i, "subgroup": label, "rows": rows, "transition_determinant": t.determinant}));
    }
    for i in 0..sf.family().len() {
        let t = transition_f_to_g(&group, &sf, i)?;
        writeln!(tsv, "transition_determinant\t{i}\t{}", t.determinant).unwrap();
    }
    Ok(Report { tsv, structured: json!({"datum": datum, "family": family_text, "members": members}) })
}

fn cmd_cosets(datum: &str, family_text: &str) -> Result<Report> {
    let group = WeylGroup::from_spec(datum)?;
    let family = parse_family(&group, family_text)?;
    let words = |vs: &[crate::root_system::WeylElement]| -> Vec<String> {
        vs.iter().map(|&v| group.word_string(v)).collect()
    };
    let mut tsv = String::new();
    let mut members = Vec::new();
    for i in 0..family.len() {
        let m = family.member(i);
        let reps = words(family.reps(i));
        writeln!(tsv, "member\t{i}\t{}\t{}\t{}", m.label(), m.order(), reps.join(" ")).unwrap();
        members.push(json!({"member": i, "subgroup": m.label(), "order": m.order(), "min_reps": reps}));
    }
    let cip = check_coset_intersection(&family);
    let witness = cip.witness.map(|(i, j)| vec![i, j]);
    match &witness {
        Some(w) => writeln!(tsv, "cip\tfalse\t{},{}", w[0], w[1]).unwrap(),
        None => writeln!(tsv, "cip\ttrue").unwrap(),
    }
    let mut cells_json = Value::Null;
    if cip.holds {
        let cells = coset_cells(&group, &family)?;
        let list: Vec<Vec<String>> = cells.cells.iter().map(|c| words(c)).collect();
        for (i, c) in list.iter().enumerate() {
            writeln!(tsv, "cell\t{i}\t{}", c.join(" ")).unwrap();
        }
        cells_json = json!(list);
    }
    let structured = json!({
        "datum": datum,
        "weyl_order": group.order(),
        "members": members,
        "cip": {"holds": cip.holds, "witness": witness},
        "cells": cells_json,
    });
    Ok(Report { tsv, structured })
}

fn load_document(spec: &str, inputs: &mut Vec<InputDigest>) -> Result<(String, WcwDocument)> {
    if let Some(name) = spec.strip_prefix("bundled:") {
        let doc = library::bundled(name).ok_or_else(|| Error::Invalid(format!("no bundled complex `{name}`")))?;
        return Ok((spec.to_string(), doc));
    }
    let (text, d) = digest(Path::new(spec))?;
    inputs.push(d);
    Ok((spec.to_string(), WcwDocument::from_json(&text)?))
}

fn parse_signs(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|t| match t.trim() {
            "1" | "+1" => Ok(1),
            "-1" => Ok(-1),
            other => Err(Error::Invalid(format!("probe value `{other}` is not ±1"))),
        })
        .collect()
}

fn cmd_bredon(a: &BredonArgs, seed: u64, inputs: &mut Vec<InputDigest>) -> Result<Report> {
    let (name, doc) = load_document(&a.complex, inputs)?;
    let system: CoefficientSystem = a.system.parse()?;
    let complex = bredon::load_wcw_complex(&doc)?;
    let rank = complex.group().datum().lattice_rank;
    let probes: Vec<Vec<i64>> = if a.probe.is_empty() {
        vec![vec![1; rank]]
    } else {
        a.probe.iter().map(|p| parse_signs(p)).collect::<Result<_>>()?
    };
    let report = bredon::rank_report(&complex, system, &probes, seed)?;
    let psi = bredon::psi_transport_agrees(&complex)?;
    if psi == Some(false) {
        return Err(Error::invariant("coefficient systems disagree after the basis identification"));
    }
    let kg = ktheory::kg_ranks(&report.betti);

    let mut tsv = String::new();
    writeln!(tsv, "complex\t{name}").unwrap();
    writeln!(tsv, "system\t{system}").unwrap();
    writeln!(tsv, "degree\trational_rank\tbetti").unwrap();
    let top = report.rational_ranks.len().max(report.betti.len());
    for n in 0..top {
        let r = report.rational_ranks.get(n).copied().unwrap_or(0);
        let b = report.betti.get(n).copied().unwrap_or(0);
        writeln!(tsv, "{n}\t{r}\t{b}").unwrap();
    }
    writeln!(tsv, "total_rank\t{}", report.total_rank()).unwrap();
    writeln!(tsv, "euler_characteristic\t{}", report.euler_characteristic).unwrap();
    writeln!(tsv, "kg_ranks\t{}\t{}", kg.even_rank, kg.odd_rank).unwrap();
    let psi_text = match psi {
        Some(true) => "agree",
        Some(false) => "disagree",
        None => "not_applicable",
    };
    writeln!(tsv, "psi_transport\t{psi_text}").unwrap();
    for p in &report.probes {
        let point: Vec<String> = p.point.iter().map(i64::to_string).collect();
        for (n, g) in p.cohomology.iter().enumerate() {
            writeln!(tsv, "probe\t{}\t{n}\t{g}", point.join(",")).unwrap();
        }
    }
    let structured = json!({
        "complex": name,
        "report": report,
        "kg_ranks": kg,
        "psi_transport": psi_text,
        "seed": seed,
    });
    Ok(Report { tsv, structured })
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Error::Invalid(format!("bad {what} value `{}`", t.trim()))))
        .collect()
}

fn parse_pair(text: &str, what: &str) -> Result<(usize, usize)> {
    match parse_list::<usize>(text, what)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(Error::Invalid(format!("{what} expects `n,r`"))),
    }
}

fn report_tsv(tsv: &mut String, key: &str, r: &KTheoryReport) {
    writeln!(tsv, "{key}\teven\t{}", r.even_rank).unwrap();
    writeln!(tsv, "{key}\todd\t{}", r.odd_rank).unwrap();
    if let Some([even, odd]) = &r.graded_table {
        writeln!(tsv, "{key}\ttable\t{even}\t{odd}").unwrap();
    }
    writeln!(tsv, "{key}\tring\t{}", r.basis_ring).unwrap();
}

fn cmd_ktheory(a: &KtheoryArgs, inputs: &mut Vec<InputDigest>) -> Result<Report> {
    let mut tsv = String::new();
    let mut out = serde_json::Map::new();
    let betti: Vec<usize> = match &a.betti {
        Some(b) => parse_list(b, "betti")?,
        None => vec![1],
    };
    if a.betti.is_some() {
        let r = ktheory::kg_ranks(&betti);
        report_tsv(&mut tsv, "kg_ranks", &r);
        out.insert("kg_ranks".into(), json!(r));
    }
    if let Some(r) = a.sphere_adjoint {
        let (reduced, sphere) = ktheory::adjoint_sphere_table(r)?;
        report_tsv(&mut tsv, "adjoint_one_point", &reduced);
        report_tsv(&mut tsv, "adjoint_unit_sphere", &sphere);
        out.insert("adjoint_sphere".into(), json!({"rank": r, "one_point_reduced": reduced, "unit_sphere": sphere}));
    }
    if let Some(text) = &a.inertia {
        let (n, r) = parse_pair(text, "--inertia")?;
        let rank = ktheory::inertia_rank(n as u32, r as u32, &betti)?;
        writeln!(tsv, "inertia_rank\t{rank}").unwrap();
        out.insert("inertia_rank".into(), json!(rank.to_string()));
    }
    if let Some(text) = &a.commuting_variety {
        let (n, r) = parse_pair(text, "--commuting-variety")?;
        let rep = ktheory::commuting_variety_table(n, r)?;
        report_tsv(&mut tsv, "commuting_variety", &rep);
        out.insert("commuting_variety".into(), json!(rep));
    }
    let mut arrangements = Vec::new();
    if let Some(path) = &a.arrangement {
        let (text, d) = digest(path)?;
        inputs.push(d);
        arrangements.push(("arrangement", Arrangement::parse(&text)?));
    }
    if let Some(datum) = &a.root_arrangement {
        arrangements.push(("root_arrangement", Arrangement::root_arrangement(&build_root_datum(datum)?)));
    }
    for (key, arr) in arrangements {
        let count = arr.chamber_count();
        let oracle = ktheory::sign_vector_chamber_count(&arr);
        if let Some(o) = oracle {
            if o as u128 != count {
                return Err(Error::invariant(format!("region counts disagree: {count} vs {o}")));
            }
        }
        writeln!(tsv, "{key}\tchambers\t{count}").unwrap();
        out.insert(key.into(), json!({"hyperplanes": arr.len(), "dim": arr.dim(), "chambers": count.to_string(), "sign_vector_check": oracle.is_some()}));
    }
    if let Some(g) = &a.group {
        let factors = ktheory::parse_group_descriptor(g);
        let inside = ktheory::in_family_p(&factors);
        writeln!(tsv, "in_family_p\t{g}\t{inside}").unwrap();
        out.insert("in_family_p".into(), json!({"group": g, "value": inside}));
    }
    if out.is_empty() {
        return Err(Error::Invalid("ktheory needs at least one query flag".into()));
    }
    Ok(Report { tsv, structured: Value::Object(out) })
}
