use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use burnside_core::eqcw::{self, ChainPackage, ChainPackageRecord, ComplexRecord, GCWComplex};
use burnside_core::groupkit::{build_group, named_group, DEFAULT_ORDER_CAP};
use burnside_core::infinite::{
    self, CcsfRecord, CcsfStructure, CovariantElement, DiagramRecord, FusionData, FusionRecord, SubFinDiagram,
};
use burnside_core::ratrep;
use burnside_core::zlinalg::int_vec;
use burnside_core::{BurnsideRing, FiniteGroup, GhostVector, GroupSpec, IntMatrix};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "burnside", version, about = "Burnside rings of finite and infinite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest group order accepted
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP, global = true)]
    cap: usize,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Subgroup classes with normalizers and Weyl groups
    Group { group: String },
    /// Table of marks
    Marks { group: String },
    /// Congruence residues and ghost-image membership of a vector
    Check {
        group: String,
        /// JSON array in class order, or object keyed by class label (inline or file)
        vector: String,
    },
    /// Equivariant Euler characteristic of a cell census
    Euler {
        complex: PathBuf,
        /// Second complex over the same group: also checks the product formula
        other: Option<PathBuf>,
    },
    /// Lefschetz class from per-class chain data
    Lefschetz {
        group: String,
        chains: PathBuf,
        /// Cell census to check the chain data against
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Also report the rational cohomotopy rank in this degree
        #[arg(long)]
        cohomotopy: Option<usize>,
    },
    /// Inverse limit of Burnside rings over a diagram of finite groups
    Limit {
        /// Diagram file
        #[arg(required_unless_present = "prufer")]
        diagram: Option<PathBuf>,
        /// Built-in tower Z/p^0 -> ... -> Z/p^N given as P,N
        #[arg(long, value_delimiter = ',', conflicts_with = "diagram")]
        prufer: Option<Vec<usize>>,
        /// Label assignment file; defaults to the colimit of the diagram
        #[arg(long)]
        labels: Option<PathBuf>,
        /// Ghost profile keyed by label, checked for condition C at every object
        #[arg(long)]
        profile: Option<String>,
    },
    /// L²-characters and integrality relations of covariant elements
    Covariant {
        /// Covariant element or character, inline JSON or file
        element: String,
        #[arg(long, group = "source")]
        fusion: Option<PathBuf>,
        /// Built-in extension of a free abelian group by Z/P with R maximal classes, given as P,R
        #[arg(long, group = "source", value_delimiter = ',')]
        extension: Option<Vec<usize>>,
        /// Fusion data of a finite group
        #[arg(long, group = "source")]
        group: Option<String>,
    },
    /// Invariant factors of A(G)/I^n
    Completion {
        group: String,
        /// Largest power
        #[arg(long, default_value_t = 4)]
        max: usize,
    },
    /// Artin induction identity and rational rank of the permutation character map
    Artin { group: String },
}

/// Report plus verdict; a false verdict exits with status 1.
struct Report {
    text: String,
    json: Value,
    verdict: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let body = match cli.common.format {
                Format::Text => report.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.json).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            let written = match &cli.common.out {
                Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            match written {
                Ok(()) if report.verdict => ExitCode::SUCCESS,
                Ok(()) => ExitCode::from(1),
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let cap = cli.common.cap;
    match &cli.command {
        Command::Group { group } => cmd_group(&load_group(group, cap)?),
        Command::Marks { group } => cmd_marks(&load_group(group, cap)?),
        Command::Check { group, vector } => cmd_check(&load_group(group, cap)?, vector),
        Command::Euler { complex, other } => cmd_euler(complex, other.as_deref(), cap),
        Command::Lefschetz { group, chains, complex, cohomotopy } => {
            cmd_lefschetz(&load_group(group, cap)?, chains, complex.as_deref(), *cohomotopy, cap)
        }
        Command::Limit { diagram, prufer, labels, profile } => {
            let d = match (diagram, prufer) {
                (_, Some(pn)) => {
                    if pn.len() != 2 || pn[0] < 2 || pn[1] == 0 {
                        bail!("--prufer needs P >= 2 and N >= 1");
                    }
                    SubFinDiagram::prufer(pn[0], pn[1])
                }
                (Some(path), None) => {
                    let rec: DiagramRecord = read_json(&path.display().to_string())?;
                    SubFinDiagram::from_record(&rec, cap)?
                }
                (None, None) => bail!("a diagram file or --prufer is required"),
            };
            cmd_limit(&d, labels.as_deref(), profile.as_deref())
        }
        Command::Covariant { element, fusion, extension, group } => {
            let f = match (fusion, extension, group) {
                (Some(path), _, _) => {
                    let rec: FusionRecord = read_json(&path.display().to_string())?;
                    FusionData::from_record(&rec)?
                }
                (_, Some(pr), _) => {
                    if pr.len() != 2 || pr[0] < 2 {
                        bail!("--extension needs P >= 2");
                    }
                    FusionData::extension_by_cyclic(pr[0], pr[1])
                }
                (_, _, Some(g)) => FusionData::from_finite_group(&BurnsideRing::of(load_group(g, cap)?)),
                _ => bail!("one of --fusion, --extension or --group is required"),
            };
            cmd_covariant(&f, element)
        }
        Command::Completion { group, max } => cmd_completion(&load_group(group, cap)?, *max),
        Command::Artin { group } => cmd_artin(&load_group(group, cap)?),
    }
}

// ---------------------------------------------------------------------------
// Input

/// Inline JSON when the argument starts with `{` or `[`, otherwise a file path.
fn json_source(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).context("parsing inline JSON");
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {arg}"))
}

fn read_json<T: for<'de> Deserialize<'de>>(arg: &str) -> Result<T> {
    Ok(serde_json::from_value(json_source(arg)?)?)
}

/// Group name, inline JSON spec, or a file holding a JSON spec.
fn load_group(arg: &str, cap: usize) -> Result<FiniteGroup> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || Path::new(arg).is_file() {
        let spec: GroupSpec = read_json(arg)?;
        return Ok(build_group(&spec, cap)?);
    }
    Ok(named_group(arg, cap)?)
}

fn parse_int(v: &Value) -> Result<BigInt> {
    int_vec::from_json(v).ok_or_else(|| anyhow!("bad integer {v}"))
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => s.trim().parse::<BigRational>().map_err(|e| anyhow!("bad rational {s:?}: {e}")),
        other => Ok(BigRational::from_integer(parse_int(other)?)),
    }
}

fn label_map<T>(v: &Value, parse: impl Fn(&Value) -> Result<T>) -> Result<BTreeMap<String, T>> {
    let obj = v.as_object().ok_or_else(|| anyhow!("expected an object keyed by label"))?;
    obj.iter().map(|(k, x)| Ok((k.clone(), parse(x)?))).collect()
}

fn ghost_from_json(ring: &BurnsideRing, v: &Value) -> Result<GhostVector> {
    let v = v.get("values").unwrap_or(v);
    let values = match v {
        Value::Array(items) => items.iter().map(parse_int).collect::<Result<Vec<_>>>()?,
        Value::Object(_) => {
            let map = label_map(v, parse_int)?;
            if let Some(extra) = map.keys().find(|k| ring.ccs().index_of_label(k).is_none()) {
                bail!("unknown class label {extra}");
            }
            ring.ccs()
                .labels()
                .iter()
                .map(|l| map.get(l).cloned().ok_or_else(|| anyhow!("no value for class {l}")))
                .collect::<Result<Vec<_>>>()?
        }
        _ => bail!("expected an array or an object of integers"),
    };
    if values.len() != ring.len() {
        bail!("expected {} values, got {}", ring.len(), values.len());
    }
    Ok(GhostVector { values })
}

// ---------------------------------------------------------------------------
// Formatting

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_vec::to_json).collect())
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(m.row_iter().map(ints).collect())
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Left-aligned columns.
fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            widths[i] = widths[i].max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let pad = widths[i] - c.chars().count();
            s.push_str(c);
            if i + 1 < cells.len() {
                s.push_str(&" ".repeat(pad));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header);
    for r in rows {
        out.push_str(&line(r));
    }
    out
}

fn format_covariant(t: &CovariantElement) -> String {
    let mut s = String::new();
    for (l, c) in t.iter().filter(|(_, c)| c.sign() != num_bigint::Sign::NoSign) {
        let negative = c.sign() == num_bigint::Sign::Minus;
        let mag = c.magnitude();
        match (s.is_empty(), negative) {
            (true, true) => s.push('-'),
            (false, true) => s.push_str(" - "),
            (false, false) => s.push_str(" + "),
            (true, false) => {}
        }
        if !mag.is_one() {
            s.push_str(&mag.to_string());
        }
        s.push_str(&format!("[{l}]"));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn verdict_word(b: bool) -> &'static str {
    if b {
        "accepted"
    } else {
        "rejected"
    }
}

// ---------------------------------------------------------------------------
// Commands

fn cmd_group(g: &FiniteGroup) -> Result<Report> {
    let ring = BurnsideRing::of(g.clone());
    let ccs = ring.ccs();
    let classes: Vec<Value> = ccs
        .classes()
        .iter()
        .map(|c| {
            json!({
                "label": c.label,
                "order": c.order(),
                "conjugates": c.conjugates.len(),
                "normalizer_order": c.normalizer.order(),
                "weyl_order": c.weyl_order,
                "generators": c.representative.generators(),
                "elements": c.representative.elements(),
            })
        })
        .collect();
    let rows: Vec<Vec<String>> = ccs
        .classes()
        .iter()
        .map(|c| {
            vec![
                c.label.clone(),
                c.order().to_string(),
                c.conjugates.len().to_string(),
                c.normalizer.order().to_string(),
                c.weyl_order.to_string(),
                format!("{:?}", c.representative.generators()),
            ]
        })
        .collect();
    let mut text = format!(
        "group {}: order {}, {} subgroups, {} conjugacy classes of subgroups\n",
        g.label(),
        g.order(),
        ccs.subgroups().len(),
        ccs.len()
    );
    let header = ["class", "order", "conjugates", "|N|", "|W|", "generators"].map(String::from);
    text += &table(&header, &rows);
    let json = json!({
        "group": g.label(),
        "order": g.order(),
        "subgroups": ccs.subgroups().len(),
        "classes": classes,
    });
    Ok(Report { text, json, verdict: true })
}

fn cmd_marks(g: &FiniteGroup) -> Result<Report> {
    let ring = BurnsideRing::of(g.clone());
    let marks = ring.marks();
    let text = format!("table of marks of {} (row G/H, column K = |(G/H)^K|)\n{}", g.label(), marks.to_text());
    let json = json!({
        "group": g.label(),
        "labels": marks.labels,
        "marks": matrix_json(&marks.matrix),
    });
    Ok(Report { text, json, verdict: true })
}

fn cmd_check(g: &FiniteGroup, vector: &str) -> Result<Report> {
    let ring = BurnsideRing::of(g.clone());
    let v = ghost_from_json(&ring, &json_source(vector)?)?;
    let residues = ring.congruence_residues(&v);
    let accepted = ring.is_in_ghost_image(&v);
    let labels = ring.ccs().labels();
    let rows: Vec<Vec<String>> = residues
        .iter()
        .zip(&v.values)
        .map(|(r, x)| vec![r.class.clone(), x.to_string(), r.modulus.to_string(), r.residue.to_string()])
        .collect();
    let mut text = format!("ghost vector over {}\n", g.label());
    text += &table(&["class", "value", "modulus", "residue"].map(String::from), &rows);
    let mut json = json!({
        "group": g.label(),
        "labels": labels,
        "values": ints(&v.values),
        "residues": residues,
        "accepted": accepted,
    });
    match ring.uncharacter(&v) {
        Ok(x) => {
            let _ = writeln!(text, "accepted: {}", ring.format_element(&x));
            json["element"] = serde_json::to_value(ring.to_record(&x))?;
        }
        Err(e) => {
            let _ = writeln!(text, "rejected: {e}");
        }
    }
    Ok(Report { text, json, verdict: accepted })
}

fn load_complex(path: &Path, cap: usize) -> Result<(BurnsideRing, GCWComplex, ComplexRecord)> {
    let rec: ComplexRecord = read_json(&path.display().to_string())?;
    let ring = BurnsideRing::of(build_group(&rec.group, cap)?);
    let x = GCWComplex::from_record(&ring, &rec)?;
    Ok((ring, x, rec))
}

fn cmd_euler(path: &Path, other: Option<&Path>, cap: usize) -> Result<Report> {
    let (ring, x, _) = load_complex(path, cap)?;
    let chi = eqcw::euler_class(&ring, &x);
    let ghost = ring.char(&chi);
    let fixed = eqcw::fixed_euler_numbers(&ring, &x);
    let agree = ghost == fixed;
    let labels = ring.ccs().labels();
    let mut text = format!("Euler class over {}: {}\n", ring.group().label(), ring.format_element(&chi));
    let rows: Vec<Vec<String>> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| vec![l.clone(), ghost.values[i].to_string(), fixed.values[i].to_string()])
        .collect();
    text += &table(&["class", "char", "chi(X^H)"].map(String::from), &rows);
    let _ = writeln!(text, "character matches fixed-point Euler numbers: {agree}");
    let mut json = json!({
        "group": ring.group().label(),
        "euler_class": ring.to_record(&chi),
        "character": ints(&ghost.values),
        "fixed_euler_numbers": ints(&fixed.values),
        "agree": agree,
    });
    let mut verdict = agree;
    if let Some(p) = other {
        let (ring2, y, _) = load_complex(p, cap)?;
        if ring2.group().table_rows() != ring.group().table_rows() {
            bail!("the two complexes are over different groups");
        }
        let prod = eqcw::product_complex(&ring, &x, &y);
        let lhs = eqcw::euler_class(&ring, &prod);
        let rhs = ring.multiply(&chi, &eqcw::euler_class(&ring, &y));
        let holds = lhs == rhs;
        let _ = writeln!(text, "Euler class of the product: {}", ring.format_element(&lhs));
        let _ = writeln!(text, "product of Euler classes:   {}", ring.format_element(&rhs));
        let _ = writeln!(text, "product formula holds: {holds}");
        json["product"] = json!({
            "euler_class": ring.to_record(&lhs),
            "product_of_classes": ring.to_record(&rhs),
            "holds": holds,
        });
        verdict &= holds;
    }
    Ok(Report { text, json, verdict })
}

fn cmd_lefschetz(
    g: &FiniteGroup,
    chains: &Path,
    complex: Option<&Path>,
    cohomotopy: Option<usize>,
    cap: usize,
) -> Result<Report> {
    let ring = BurnsideRing::of(g.clone());
    let rec: ChainPackageRecord = read_json(&chains.display().to_string())?;
    let pkg = ChainPackage::from_record(&ring, &rec)?;
    let class = eqcw::lefschetz_class(&ring, &pkg)?;
    let mut text = format!("Lefschetz class over {}: {}\n", g.label(), ring.format_element(&class));
    let labels = ring.ccs().labels();
    let mut per_class = BTreeMap::new();
    let mut rows = Vec::new();
    for (i, data) in &pkg.classes {
        let n = data.lefschetz()?;
        let ranks = eqcw::rational_homology_ranks(&data.complex);
        rows.push(vec![labels[*i].clone(), n.to_string(), join(&ranks)]);
        per_class.insert(labels[*i].clone(), json!({"lefschetz": int_vec::to_json(&n), "homology_ranks": ranks}));
    }
    text += &table(&["class", "L(f^H)", "rational homology ranks"].map(String::from), &rows);
    let mut json = json!({
        "group": g.label(),
        "lefschetz_class": ring.to_record(&class),
        "classes": per_class,
    });
    if let Some(path) = complex {
        let (ring2, x, _) = load_complex(path, cap)?;
        if ring2.group().table_rows() != ring.group().table_rows() {
            bail!("the complex is over a different group");
        }
        pkg.check_census(&ring, &x)?;
        let degree = eqcw::degree_class(&ring, &pkg, &x)?;
        let _ = writeln!(text, "chain data matches the census");
        let _ = writeln!(text, "degree class: {}", ring.format_element(&degree));
        json["degree_class"] = serde_json::to_value(ring.to_record(&degree))?;
    }
    if let Some(n) = cohomotopy {
        let rank = eqcw::rational_cohomotopy_rank(&ring, &pkg, n)?;
        let _ = writeln!(text, "rational cohomotopy rank in degree {n}: {rank}");
        json["cohomotopy"] = json!({"degree": n, "rank": rank});
    }
    Ok(Report { text, json, verdict: true })
}

fn cmd_limit(d: &SubFinDiagram, labels: Option<&Path>, profile: Option<&str>) -> Result<Report> {
    let lim = infinite::inverse_limit(d)?;
    let subring = infinite::limit_is_subring(d, &lim);
    let structure = match labels {
        Some(p) => {
            let rec: CcsfRecord = read_json(&p.display().to_string())?;
            CcsfStructure::from_record(d, &rec)?
        }
        None => CcsfStructure::colimit(d),
    };
    let mut text = format!(
        "diagram: {} objects, {} morphisms (with identities and composites)\n",
        d.objects().len(),
        d.morphisms().len()
    );
    let _ = writeln!(text, "limit rank: {}", lim.rank);
    let _ = writeln!(text, "basis (one row per generator, blocks per object):");
    for row in lim.basis.row_iter() {
        let blocks: Vec<String> = lim.components(row).iter().map(|c| format!("[{}]", join(&c.coeffs))).collect();
        let _ = writeln!(text, "  {}", blocks.join(" "));
    }
    let _ = writeln!(text, "closed under products and contains the unit: {subring}");
    let _ = writeln!(text, "labels: {}", structure.labels.join(" "));
    let mut json = json!({
        "objects": d.objects().len(),
        "morphisms": d.morphisms().len(),
        "rank": lim.rank,
        "offsets": lim.offsets,
        "basis": matrix_json(&lim.basis),
        "subring": subring,
        "labels": serde_json::to_value(structure.to_record())?,
    });
    let mut verdict = subring;
    if let Some(src) = profile {
        let values = label_map(&json_source(src)?, parse_int)?;
        let x = structure.profile(&values)?;
        let mut results = BTreeMap::new();
        for k in 0..d.objects().len() {
            let ok = infinite::condition_c(d, &structure, &x, k)?;
            let _ = writeln!(text, "condition C at object {k} ({}): {ok}", d.objects()[k].label());
            results.insert(k.to_string(), ok);
            verdict &= ok;
        }
        json["condition_c"] = serde_json::to_value(results)?;
    }
    Ok(Report { text, json, verdict })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CovariantInput {
    #[serde(default)]
    element: Option<Value>,
    #[serde(default)]
    character: Option<Value>,
}

fn cmd_covariant(f: &FusionData, source: &str) -> Result<Report> {
    let input: CovariantInput = read_json(source)?;
    let (element, x) = match (&input.element, &input.character) {
        (Some(e), None) => {
            let t: CovariantElement = label_map(e, parse_int)?;
            // support closed under subconjugacy
            let mut support = BTreeSet::new();
            for h in t.keys() {
                let h = f.label_index(h)?;
                for k in 0..f.labels.len() {
                    if f.subconjugate(k, h)? {
                        support.insert(f.labels[k].name.clone());
                    }
                }
            }
            let support: Vec<String> = support.into_iter().collect();
            (Some(t.clone()), infinite::global_character(&t, &support, f)?)
        }
        (None, Some(c)) => (None, label_map(c, parse_rational)?),
        _ => bail!("give exactly one of \"element\" or \"character\""),
    };
    let cert = infinite::integrality_check(&x, f)?;
    let mut text = String::new();
    if let Some(t) = &element {
        let _ = writeln!(text, "element: {}", format_covariant(t));
    }
    let _ = writeln!(text, "support (numerated): {}", cert.order.join(" "));
    let rows: Vec<Vec<String>> = cert
        .order
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let mut r = vec![l.clone(), x[l].to_string()];
            r.extend((0..cert.order.len()).map(|j| cert.a_t.get(i, j).to_string()));
            r.push(cert.coordinates[i].to_string());
            r
        })
        .collect();
    let mut header = vec!["label".to_string(), "character".to_string()];
    header.extend(cert.order.iter().map(|l| format!("A[{l}]")));
    header.push("B*x".to_string());
    text += &table(&header, &rows);
    let _ = writeln!(text, "relations:");
    for r in cert.relations() {
        let _ = writeln!(text, "  {r}");
    }
    let _ = writeln!(text, "integrality: {}", verdict_word(cert.accepted));
    let rat_matrix = |m: &burnside_core::RatMatrix| -> Value {
        Value::Array(
            (0..cert.order.len())
                .map(|i| Value::Array((0..cert.order.len()).map(|j| Value::from(m.get(i, j).to_string())).collect()))
                .collect(),
        )
    };
    let json = json!({
        "element": element.as_ref().map(|t| t.iter().map(|(l, c)| (l.clone(), int_vec::to_json(c))).collect::<BTreeMap<_, _>>()),
        "support": cert.order,
        "character": cert.order.iter().map(|l| (l.clone(), x[l].to_string())).collect::<BTreeMap<_, _>>(),
        "a_t": rat_matrix(&cert.a_t),
        "b_t": rat_matrix(&cert.b_t),
        "coordinates": cert.coordinates.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "relations": cert.relations(),
        "accepted": cert.accepted,
    });
    Ok(Report { text, json, verdict: cert.accepted })
}

fn cmd_completion(g: &FiniteGroup, max: usize) -> Result<Report> {
    if max == 0 {
        bail!("--max must be at least 1");
    }
    let ring = BurnsideRing::of(g.clone());
    let mut text = format!("invariant factors of A({})/I^n (0 = free factor)\n", g.label());
    let mut rows = Vec::new();
    for n in 1..=max {
        let factors = ring.completion_quotient(n);
        let _ = writeln!(text, "n={n}: ({})", factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        rows.push(json!({"n": n, "factors": ints(&factors)}));
    }
    Ok(Report { text, json: json!({"group": g.label(), "quotients": rows}), verdict: true })
}

fn cmd_artin(g: &FiniteGroup) -> Result<Report> {
    let g = Arc::new(g.clone());
    let report = ratrep::verify_artin(&g);
    let ring = BurnsideRing::new(&g);
    let rank = ratrep::rational_rank_check(&ring);
    let left = report.left.to_record();
    let right = report.right.to_record();
    let rows: Vec<Vec<String>> = (0..left.values.len())
        .map(|c| {
            vec![
                left.representatives[c].to_string(),
                left.class_sizes[c].to_string(),
                left.values[c].clone(),
                right.values[c].clone(),
            ]
        })
        .collect();
    let mut text = format!("Artin identity over {} ({} cyclic subgroups)\n", g.label(), report.cyclic_subgroups);
    text += &table(&["class rep", "size", "|G|*1", "sum ind theta_C"].map(String::from), &rows);
    let _ = writeln!(text, "identity holds: {}", report.holds);
    let _ = writeln!(
        text,
        "permutation characters: rank {} on {} cyclic classes (rationally surjective: {})",
        rank.image_rank,
        rank.cyclic_class_count,
        rank.surjective()
    );
    let json = json!({
        "group": g.label(),
        "cyclic_subgroups": report.cyclic_subgroups,
        "left": left,
        "right": right,
        "holds": report.holds,
        "rational_rank": rank,
        "surjective": rank.surjective(),
    });
    Ok(Report { text, json, verdict: report.holds && rank.surjective() })
}
