use std::fmt::Debug;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use bibd_codes::codec::{
    ber_campaign, records_to_csv, CampaignConfig, CodecError, Decoder, DecoderConfig, Encoder, EncoderMode, StopRule,
};
use bibd_codes::designs::{
    buratti_cdf, cdf_existence_status, crcbibd_exists, expand_cdf_to_design, find_base_block_with_difference,
    netto_cdf, parse_design, radical_df_search, rbibd_existence_status, verify_bibd, verify_resolution, write_design,
    Design, DesignError, DifferenceFamily, FamilyKind, LdpcParameters, LoadOptions,
};
use bibd_codes::matrices::{
    girth_with_witness, incidence_matrix, min_distance, parse_alist, qc_layout, rank_facts_hold, rank_gf2, write_alist,
    MatrixError, MinDistance, SparseBinaryMatrix, TannerNode,
};
use bibd_codes::ra::{
    class_orbits, sra_from_cdf, sra_from_crcbibd, sra_from_kts, w3ra_from_kts, wqra_from_cdf, wqra_from_crcbibd,
    RaError, RaParityCheck, Sidecar,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::manifest::Manifest;
use crate::{Check, Family, Kind, Precision, Query, Source};

fn variant<T: Debug>(x: &T) -> String {
    let s = format!("{x:?}");
    s.split(|c: char| !c.is_alphanumeric() && c != '_')
        .next()
        .unwrap_or_default()
        .to_string()
}

fn ra_name(e: &RaError) -> String {
    match e {
        RaError::Design(d) => variant(d),
        RaError::Matrix(m) => variant(m),
        other => variant(other),
    }
}

/// Name of the library error variant behind `e`, e.g. `BadModulus`.
pub fn error_name(e: &anyhow::Error) -> String {
    if let Some(d) = e.downcast_ref::<DesignError>() {
        match d {
            DesignError::Algebra(a) => variant(a),
            other => variant(other),
        }
    } else if let Some(m) = e.downcast_ref::<MatrixError>() {
        variant(m)
    } else if let Some(r) = e.downcast_ref::<RaError>() {
        ra_name(r)
    } else if let Some(c) = e.downcast_ref::<CodecError>() {
        match c {
            CodecError::Ra(r) => ra_name(r),
            CodecError::Matrix(m) => variant(m),
            other => variant(other),
        }
    } else if e.downcast_ref::<std::io::Error>().is_some() {
        "Io".into()
    } else {
        "Input".into()
    }
}

fn read(path: &Path, manifest: &mut Manifest) -> anyhow::Result<String> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    manifest.input(path, &text);
    Ok(text)
}

fn write(path: &Path, text: &str, manifest: &mut Manifest) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    manifest.output(path);
    Ok(())
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn is_design_text(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("design"))
}

fn load_design(path: &Path, manifest: &mut Manifest) -> anyhow::Result<Design> {
    let text = read(path, manifest)?;
    Ok(parse_design(&text, LoadOptions::default())?)
}

fn load_alist(path: &Path, manifest: &mut Manifest) -> anyhow::Result<SparseBinaryMatrix> {
    let text = read(path, manifest)?;
    Ok(parse_alist(&text)?)
}

fn print_parameters(d: &Design, h: &SparseBinaryMatrix) {
    let rank = rank_gf2(h);
    let k = h.cols() - rank;
    match LdpcParameters::from_design(d.v() as u64, d.k() as u64) {
        Some(p) => println!(
            "{}; rate >= {:.2} (design bound (r-k)/r); rate = {:.4} (exact, K={k}, rank={rank})",
            p.regularity_label(),
            p.rate_bound,
            k as f64 / h.cols() as f64
        ),
        None => println!(
            "N={}; rate = {:.4} (exact, K={k}, rank={rank})",
            h.cols(),
            k as f64 / h.cols() as f64
        ),
    }
}

pub fn construct(family: Family, p: u64, k: usize, expand: bool, budget: u64, out: &Path) -> anyhow::Result<()> {
    let mut manifest = Manifest::new("construct");
    let f = match family {
        Family::Netto => netto_cdf(p)?,
        Family::Buratti => buratti_cdf(p, k)?,
        Family::Rdf => radical_df_search(p, k, budget)?,
    };
    let d = expand_cdf_to_design(&f)?;
    let text = if expand {
        write_design(&d)
    } else {
        let compact =
            Design::new(d.v(), d.k(), Vec::new())?.with_cyclic(d.cyclic().expect("expanded from a family").clone());
        write_design(&compact)
    };
    write(out, &text, &mut manifest)?;
    manifest.write_next_to(out)?;
    println!(
        "design v={} k={} b={} base_blocks={}",
        d.v(),
        d.k(),
        d.b(),
        f.base_blocks.len()
    );
    print_parameters(&d, &incidence_matrix(&d));
    Ok(())
}

pub fn catalog(query: Query, v: u64, k: u64) -> anyhow::Result<()> {
    let status = match query {
        Query::Rbibd => rbibd_existence_status(v, k),
        Query::Crcbibd => crcbibd_exists(v, k)?,
        Query::Cdf => cdf_existence_status(v, k),
    };
    println!("{status}");
    Ok(())
}

fn check_entry(name: &str, status: &str, detail: Value) -> Value {
    json!({ "check": name, "status": status, "detail": detail })
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn matrix_checks(h: &SparseBinaryMatrix, design: Option<&Design>, checks: &[Check], cap: Option<usize>) -> Vec<Value> {
    let mut out = Vec::new();
    for check in checks {
        match check {
            Check::Girth => {
                let report = girth_with_witness(h);
                let ok = report.girth.is_none_or(|g| g >= 6);
                let cycle: Vec<String> = report
                    .cycle
                    .iter()
                    .map(|n| match n {
                        TannerNode::Variable(i) => format!("v{i}"),
                        TannerNode::Check(i) => format!("c{i}"),
                    })
                    .collect();
                out.push(check_entry(
                    "girth",
                    pass(ok),
                    json!({ "girth": report.girth, "cycle": cycle }),
                ));
            }
            Check::Rank => {
                let rank = rank_gf2(h);
                let ok = design.is_none_or(|d| rank_facts_hold(d.v(), d.k(), rank));
                out.push(check_entry(
                    "rank",
                    pass(ok),
                    json!({ "rank": rank, "n": h.cols(), "k": h.cols() - rank, "rate": (h.cols() - rank) as f64 / h.cols().max(1) as f64 }),
                ));
            }
            Check::Regularity => {
                let reg = h.regularity();
                let ok = reg.column.constant().is_some() && reg.row.constant().is_some();
                out.push(check_entry(
                    "regularity",
                    pass(ok),
                    json!({ "column": reg.column.to_string(), "row": reg.row.to_string() }),
                ));
            }
            Check::Mindist => {
                let entry = match min_distance(h, cap) {
                    Ok(MinDistance::Exact(d)) => {
                        let ok = design.is_none_or(|des| d > des.k());
                        check_entry("mindist", pass(ok), json!({ "distance": d }))
                    }
                    Ok(MinDistance::AboveCap(c)) => check_entry("mindist", "pass", json!({ "above": c })),
                    Ok(MinDistance::NoCodewords) => check_entry("mindist", "pass", json!({ "distance": null })),
                    Err(e) => check_entry("mindist", "fail", json!({ "error": e.to_string() })),
                };
                out.push(entry);
            }
            Check::Bibd | Check::Resolution => {}
        }
    }
    out
}

/// Prints a JSON report; returns whether no check failed.
pub fn verify(input: &Path, checks: &[Check], cap: Option<usize>) -> anyhow::Result<bool> {
    let mut manifest = Manifest::new("verify");
    let text = read(input, &mut manifest)?;
    let mut results = Vec::new();
    let kind;
    let h = if is_design_text(&text) {
        kind = "design";
        let d = parse_design(&text, LoadOptions { trusted: true })?;
        for check in checks {
            match check {
                Check::Bibd => {
                    let r = verify_bibd(&d);
                    results.push(check_entry(
                        "bibd",
                        pass(r.ok),
                        json!({ "b": r.b, "r": r.r, "lambda_histogram": r.lambda_histogram, "first_bad_pair": r.first_bad_pair }),
                    ));
                }
                Check::Resolution => match verify_resolution(&d) {
                    Ok(r) => {
                        let defects: Vec<Value> = r
                            .defects
                            .iter()
                            .map(|x| json!({ "class": x.class, "point": x.point, "count": x.count }))
                            .collect();
                        results.push(check_entry(
                            "resolution",
                            pass(r.ok),
                            json!({ "classes": r.classes, "partitions_blocks": r.partitions_blocks, "defects": defects }),
                        ));
                    }
                    Err(DesignError::MissingResolution) => results.push(check_entry(
                        "resolution",
                        "skip",
                        json!({ "reason": "no resolution in file" }),
                    )),
                    Err(e) => return Err(e.into()),
                },
                _ => {}
            }
        }
        let h = incidence_matrix(&d);
        results.extend(matrix_checks(&h, Some(&d), checks, cap));
        h
    } else {
        kind = "alist";
        let h = parse_alist(&text)?;
        for check in checks {
            if matches!(check, Check::Bibd | Check::Resolution) {
                let name = if *check == Check::Bibd { "bibd" } else { "resolution" };
                results.push(check_entry(name, "skip", json!({ "reason": "input is a matrix" })));
            }
        }
        results.extend(matrix_checks(&h, None, checks, cap));
        h
    };
    let ok = results.iter().all(|r| r["status"] != "fail");
    let report = json!({
        "input": input.display().to_string(),
        "kind": kind,
        "rows": h.rows(),
        "cols": h.cols(),
        "ok": ok,
        "checks": results,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ok)
}

fn parse_list(spec: &str, all: impl FnOnce() -> Vec<usize>) -> anyhow::Result<Vec<usize>> {
    match spec.trim() {
        "all" => Ok(all()),
        "none" | "" => Ok(Vec::new()),
        s => s
            .split(',')
            .map(|x| x.trim().parse::<usize>().with_context(|| format!("bad index {x:?}")))
            .collect(),
    }
}

fn family_of(d: &Design) -> anyhow::Result<DifferenceFamily> {
    let Some(c) = d.cyclic() else {
        bail!("design file has no `cyclic` line; the cdf source needs base blocks")
    };
    Ok(DifferenceFamily::new(
        d.v(),
        d.k(),
        c.base_blocks.clone(),
        FamilyKind::Cdf,
        c.short_orbit,
    ))
}

#[allow(clippy::too_many_arguments)]
pub fn transform(
    input: &Path,
    kind: Kind,
    source: Source,
    g1: Option<usize>,
    h1: &str,
    orbit: Option<usize>,
    out: &Path,
) -> anyhow::Result<()> {
    let mut manifest = Manifest::new("transform");
    let d = load_design(input, &mut manifest)?;
    let ra: RaParityCheck = match source {
        Source::Cdf => {
            let f = family_of(&d)?;
            let target = if kind == Kind::Sra { 1 } else { g1.unwrap_or(1) };
            let used = find_base_block_with_difference(&f, target).ok();
            let list = parse_list(h1, || (0..f.base_blocks.len()).filter(|&i| Some(i) != used).collect())?;
            match kind {
                Kind::Sra => sra_from_cdf(&f, &list)?,
                Kind::Wqra => wqra_from_cdf(&f, target, &list)?,
            }
        }
        Source::Kts => {
            let n = d.resolution().map_or(0, |r| r.len());
            let list = parse_list(h1, || (0..n.saturating_sub(3)).collect())?;
            match kind {
                Kind::Sra => sra_from_kts(&d, &list)?,
                Kind::Wqra => {
                    if g1.is_some_and(|g| g != 1) {
                        bail!("the Kirkman tail transform fixes g1 = 1");
                    }
                    w3ra_from_kts(&d, &list)?
                }
            }
        }
        Source::Crcbibd => {
            if let (Kind::Wqra, Some(g)) = (kind, g1) {
                if g == 0 || bibd_codes::algebra::gcd(g as u64, d.v() as u64) != 1 {
                    return Err(RaError::BadG1 { g1: g, modulus: d.v() }.into());
                }
            }
            let orbits = class_orbits(&d)?;
            let index = match orbit {
                Some(i) => i,
                None => orbits
                    .iter()
                    .position(|o| o.len() == d.k())
                    .ok_or_else(|| RaError::PropertyViolation(format!("no class orbit of length {}", d.k())))?,
            };
            let reserved = orbits.get(index).cloned().unwrap_or_default();
            let n = d.resolution().map_or(0, |r| r.len());
            let list = parse_list(h1, || (0..n).filter(|c| !reserved.contains(c)).collect())?;
            match kind {
                Kind::Sra => sra_from_crcbibd(&d, index, &list)?,
                Kind::Wqra => wqra_from_crcbibd(&d, index, g1.unwrap_or(1), &list)?,
            }
        }
    };
    write(out, &write_alist(&ra.h()), &mut manifest)?;
    let sidecar = with_suffix(out, ".ra");
    write(&sidecar, &ra.sidecar(), &mut manifest)?;
    manifest.write_next_to(out)?;
    println!("[N, K, R, q] = [{}, {}, {:.4}, {}]", ra.n(), ra.k(), ra.rate(), ra.q());
    match ra.accumulator().spec() {
        Some(spec) => println!(
            "accumulator g = {}",
            spec.g().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        ),
        None => println!("accumulator g = irregular"),
    }
    println!("provenance: {}", ra.provenance());
    Ok(())
}

pub fn export(input: &Path, out: &Path) -> anyhow::Result<()> {
    let mut manifest = Manifest::new("export");
    let d = load_design(input, &mut manifest)?;
    let h = incidence_matrix(&d);
    write(out, &write_alist(&h), &mut manifest)?;
    manifest.write_next_to(out)?;
    println!("H: {} x {}", h.rows(), h.cols());
    if d.cyclic().is_some() {
        if let Ok(layout) = qc_layout(&h.column_range(0..h.cols() - h.cols() % d.v()), d.v()) {
            println!(
                "quasi-cyclic: {} circulants of size {}",
                layout.block_columns.len(),
                d.v()
            );
        }
    }
    print_parameters(&d, &h);
    Ok(())
}

fn encoder_for(h: &SparseBinaryMatrix, sidecar: Option<&Path>, manifest: &mut Manifest) -> anyhow::Result<Encoder> {
    Ok(match sidecar {
        Some(path) => {
            let sc = Sidecar::parse(&read(path, manifest)?)?;
            Encoder::from_ra(sc.attach(h)?)
        }
        None => Encoder::new(h, EncoderMode::GeneralGe)?,
    })
}

fn bits_to_string(bits: &[u8]) -> String {
    bits.iter().map(|&b| if b == 1 { '1' } else { '0' }).collect()
}

fn emit(out: Option<&Path>, text: &str, mut manifest: Manifest) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            write(path, text, &mut manifest)?;
            manifest.write_next_to(path)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

pub fn encode(
    h: &Path,
    sidecar: Option<&Path>,
    messages: Option<&Path>,
    random: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let mut manifest = Manifest::new("encode");
    let matrix = load_alist(h, &mut manifest)?;
    let encoder = encoder_for(&matrix, sidecar, &mut manifest)?;
    let msgs: Vec<Vec<u8>> = match (messages, random) {
        (Some(path), _) => read(path, &mut manifest)?
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.trim()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => bail!("message character {other:?} is not 0 or 1"),
                    })
                    .collect()
            })
            .collect::<anyhow::Result<_>>()?,
        (None, Some(n)) => {
            manifest.seed = Some(seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n)
                .map(|_| (0..encoder.k()).map(|_| u8::from(rng.random::<bool>())).collect())
                .collect()
        }
        (None, None) => bail!("pass --messages or --random"),
    };
    let mut text = String::new();
    for m in &msgs {
        text.push_str(&bits_to_string(&encoder.encode(m)?));
        text.push('\n');
    }
    emit(out, &text, manifest)
}

pub fn decode(h: &Path, llr: &Path, max_iter: usize, min_sum: bool, out: Option<&Path>) -> anyhow::Result<()> {
    let mut manifest = Manifest::new("decode");
    let matrix = load_alist(h, &mut manifest)?;
    let cfg = DecoderConfig {
        max_iterations: max_iter,
        min_sum,
        ..Default::default()
    };
    let mut decoder = Decoder::<f64>::new(&matrix, cfg)?;
    let mut text = String::new();
    for (i, line) in read(llr, &mut manifest)?.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let values: Vec<f64> = line
            .split_whitespace()
            .map(|x| {
                x.parse::<f64>()
                    .with_context(|| format!("line {}: bad LLR {x:?}", i + 1))
            })
            .collect::<anyhow::Result<_>>()?;
        let res = decoder.decode(&values)?;
        text.push_str(&format!(
            "{} {} {}\n",
            bits_to_string(&res.bits),
            u8::from(res.converged),
            res.iterations
        ));
    }
    emit(out, &text, manifest)
}

pub struct SimulateArgs<'a> {
    pub h: &'a Path,
    pub sidecar: Option<&'a Path>,
    pub snr: &'a [f64],
    pub min_frame_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
    pub max_iter: usize,
    pub min_sum: bool,
    pub precision: Precision,
    pub out: &'a Path,
}

pub fn simulate(args: SimulateArgs<'_>) -> anyhow::Result<()> {
    let mut manifest = Manifest::new("simulate");
    manifest.seed = Some(args.seed);
    let matrix = load_alist(args.h, &mut manifest)?;
    let encoder = encoder_for(&matrix, args.sidecar, &mut manifest)?;
    let cfg = CampaignConfig {
        seed: args.seed,
        stop: StopRule {
            min_frame_errors: args.min_frame_errors,
            max_frames: args.max_frames,
        },
        decoder: DecoderConfig {
            max_iterations: args.max_iter,
            min_sum: args.min_sum,
            ..Default::default()
        },
        ..Default::default()
    };
    let records = match args.precision {
        Precision::F64 => ber_campaign::<f64>(&encoder, args.snr, &cfg)?,
        Precision::F32 => ber_campaign::<f32>(&encoder, args.snr, &cfg)?,
    };
    let csv = records_to_csv(&records);
    write(args.out, &csv, &mut manifest)?;
    manifest.write_next_to(args.out)?;
    println!("[N, K, R] = [{}, {}, {:.4}]", encoder.n(), encoder.k(), encoder.rate());
    print!("{csv}");
    Ok(())
}
