use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bibd_codes::matrices::{write_alist, SparseBinaryMatrix};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bibd-codes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/../core/tests/fixtures/{name}.design", env!("CARGO_MANIFEST_DIR"))
}

fn verify_json(args: &[&str]) -> (i32, serde_json::Value) {
    let o = run(args);
    (
        o.status.code().unwrap(),
        serde_json::from_str(&stdout(&o)).expect("verify prints JSON"),
    )
}

fn check<'a>(report: &'a serde_json::Value, name: &str) -> &'a serde_json::Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == name)
        .unwrap()
}

#[test]
fn construct_netto_19_prints_parameters() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "n19.design");
    let o = run(&[
        "construct",
        "--family",
        "netto",
        "--p",
        "19",
        "--expand",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("(3, r=9), N=57"), "{text}");
    assert!(text.contains("rate >= 0.67"));
    assert!(text.contains("K=38, rank=19"));
    assert!(std::fs::read_to_string(&out)
        .unwrap()
        .starts_with("design v=19 k=3 b=57"));
    assert!(Path::new(&format!("{}.manifest.json", out.display())).exists());
}

#[test]
fn construct_rejects_bad_modulus() {
    let dir = TempDir::new().unwrap();
    let o = run(&[
        "construct",
        "--family",
        "netto",
        "--p",
        "11",
        "--out",
        s(&path(&dir, "x")),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("BadModulus"), "{}", stderr(&o));
}

#[test]
fn construct_radical_family_73_9() {
    let dir = TempDir::new().unwrap();
    let o = run(&[
        "construct",
        "--family",
        "rdf",
        "--p",
        "73",
        "--k",
        "9",
        "--out",
        s(&path(&dir, "r.design")),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("design v=73 k=9 b=73"));
}

#[test]
fn catalog_answers() {
    let line = |args: &[&str]| {
        let o = run(args);
        assert!(o.status.success());
        stdout(&o)
    };
    assert!(line(&["catalog", "--query", "rbibd", "--v", "45", "--k", "5"]).starts_with("Unknown"));
    assert!(line(&["catalog", "--query", "crcbibd", "--p", "41", "--k", "5"]).starts_with("Exists"));
    assert!(line(&["catalog", "--query", "rbibd", "--v", "10", "--k", "4"]).starts_with("Impossible"));
}

#[test]
fn transform_crcbibd_sra_gives_double_diagonal() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "crc.alist");
    let o = run(&[
        "transform",
        "--in",
        &fixture("crcbibd39"),
        "--kind",
        "sra",
        "--source",
        "crcbibd",
        "--h1-classes",
        "all",
        "--out",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("accumulator g = 1"), "{}", stdout(&o));
    let h = bibd_codes::matrices::parse_alist(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let h2 = h.column_range(h.cols() - h.rows()..h.cols());
    assert!(h2.is_double_diagonal());
    assert!(Path::new(&format!("{}.ra", out.display())).exists());
}

#[test]
fn transform_wqra_rejects_non_coprime_g1() {
    let dir = TempDir::new().unwrap();
    let o = run(&[
        "transform",
        "--in",
        &fixture("crcbibd39"),
        "--kind",
        "wqra",
        "--source",
        "crcbibd",
        "--g1",
        "3",
        "--h1-classes",
        "none",
        "--out",
        s(&path(&dir, "x.alist")),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("BadG1"), "{}", stderr(&o));
}

#[test]
fn transform_buratti_uses_last_block() {
    let dir = TempDir::new().unwrap();
    let design = path(&dir, "b13.design");
    assert!(run(&[
        "construct",
        "--family",
        "buratti",
        "--p",
        "13",
        "--k",
        "4",
        "--out",
        s(&design)
    ])
    .status
    .success());
    let o = run(&[
        "transform",
        "--in",
        s(&design),
        "--kind",
        "wqra",
        "--source",
        "cdf",
        "--g1",
        "1",
        "--h1-classes",
        "none",
        "--out",
        s(&path(&dir, "b.alist")),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("h2_orbit=0"), "{}", stdout(&o));
}

#[test]
fn pipeline_and_simulate_determinism() {
    let dir = TempDir::new().unwrap();
    let design = path(&dir, "n31.design");
    let alist = path(&dir, "n31.alist");
    assert!(
        run(&["construct", "--family", "netto", "--p", "31", "--out", s(&design)])
            .status
            .success()
    );
    let o = run(&[
        "transform",
        "--in",
        s(&design),
        "--kind",
        "wqra",
        "--source",
        "cdf",
        "--g1",
        "1",
        "--h1-classes",
        "all",
        "--out",
        s(&alist),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let sidecar = format!("{}.ra", alist.display());
    let sim = |name: &str| {
        let csv = path(&dir, name);
        let o = run(&[
            "simulate",
            "--h",
            s(&alist),
            "--sidecar",
            &sidecar,
            "--snr",
            "2,3,4,5",
            "--min-frame-errors",
            "20",
            "--max-frames",
            "3000",
            "--seed",
            "11",
            "--out",
            s(&csv),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        std::fs::read(&csv).unwrap()
    };
    let a = sim("a.csv");
    assert_eq!(a, sim("b.csv"));
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("ebno_db,frames,bit_errors,frame_errors,bits_total,ber,fer,seed\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn encode_then_decode_round_trip() {
    let dir = TempDir::new().unwrap();
    let design = path(&dir, "n13.design");
    let alist = path(&dir, "n13.alist");
    assert!(
        run(&["construct", "--family", "netto", "--p", "13", "--out", s(&design)])
            .status
            .success()
    );
    assert!(run(&["export", "--in", s(&design), "--out", s(&alist)])
        .status
        .success());
    let o = run(&["encode", "--h", s(&alist), "--random", "3", "--seed", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let words: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(words.len(), 3);
    let llr: String = words
        .iter()
        .map(|w| {
            w.chars()
                .map(|c| if c == '0' { "4.0" } else { "-4.0" })
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect();
    let llr_path = path(&dir, "in.llr");
    std::fs::write(&llr_path, llr).unwrap();
    let o = run(&["decode", "--h", s(&alist), "--llr", s(&llr_path)]);
    assert!(o.status.success(), "{}", stderr(&o));
    for (line, word) in stdout(&o).lines().zip(&words) {
        assert!(line.starts_with(&format!("{word} 1 ")), "{line}");
    }
}

#[test]
fn export_round_trip_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let design = path(&dir, "n19.design");
    let a = path(&dir, "a.alist");
    assert!(
        run(&["construct", "--family", "netto", "--p", "19", "--out", s(&design)])
            .status
            .success()
    );
    assert!(run(&["export", "--in", s(&design), "--out", s(&a)]).status.success());
    let text = std::fs::read_to_string(&a).unwrap();
    let h = bibd_codes::matrices::parse_alist(&text).unwrap();
    assert_eq!(write_alist(&h), text);
}

#[test]
fn verify_fano_design() {
    let dir = TempDir::new().unwrap();
    let design = path(&dir, "fano.design");
    assert!(run(&[
        "construct",
        "--family",
        "netto",
        "--p",
        "7",
        "--expand",
        "--out",
        s(&design)
    ])
    .status
    .success());
    let (code, report) = verify_json(&[
        "verify",
        "--in",
        s(&design),
        "--checks",
        "bibd,girth,rank,regularity,mindist",
    ]);
    assert_eq!(code, 0);
    assert_eq!(check(&report, "girth")["detail"]["girth"], 6);
    assert_eq!(check(&report, "rank")["detail"]["rank"], 4);
    assert_eq!(check(&report, "regularity")["detail"]["column"], "3");
    assert_eq!(check(&report, "regularity")["detail"]["row"], "3");
    assert_eq!(check(&report, "mindist")["detail"]["distance"], 4);
}

#[test]
fn verify_reports_a_four_cycle() {
    let dir = TempDir::new().unwrap();
    let h = SparseBinaryMatrix::from_dense(&[vec![1, 1, 0], vec![1, 1, 1], vec![0, 0, 1]]).unwrap();
    let alist = path(&dir, "bad.alist");
    std::fs::write(&alist, write_alist(&h)).unwrap();
    let (code, report) = verify_json(&["verify", "--in", s(&alist), "--checks", "girth"]);
    assert_eq!(code, 1);
    let g = check(&report, "girth");
    assert_eq!(g["status"], "fail");
    assert_eq!(g["detail"]["girth"], 4);
    assert_eq!(g["detail"]["cycle"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_names_the_broken_class() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(fixture("kts21"))
        .unwrap()
        .replace("class 0: 0,1,2,3,4,5,6", "class 0: 0,1,2,3,4,5,7")
        .replace("class 1: 7,8,9,10,11,12,13", "class 1: 6,8,9,10,11,12,13");
    let design = path(&dir, "broken.design");
    std::fs::write(&design, text).unwrap();
    let (code, report) = verify_json(&["verify", "--in", s(&design), "--checks", "resolution"]);
    assert_eq!(code, 1);
    let r = check(&report, "resolution");
    assert_eq!(r["status"], "fail");
    let defects = r["detail"]["defects"].as_array().unwrap();
    assert!(defects.iter().any(|d| d["class"] == 0));
    assert!(defects.iter().all(|d| d["point"].is_u64()));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["construct", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}
