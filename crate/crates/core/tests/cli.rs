use std::process::{Command, Output};

use mckay_chambers::cli::{AnalyzeOutput, ChambersOutput, PlotOutput, RootsOutput, SvgOutput};
use mckay_chambers::mori::{AmpleModelTag, MoriReport};
use mckay_chambers::walls::{Contraction, ModelLabel, WallClass};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mckay")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

#[test]
fn roots_command() {
    let s = ok(&["--type", "A", "--rank", "1", "--n", "2", "roots"]);
    let r: RootsOutput = serde_json::from_str(&s).unwrap();
    assert!(r.roots.roots.contains(&vec![1, 2, 2]));
    assert_eq!(r.roots.legend, vec!["inf", "0", "1"]);
    assert_eq!(serde_json::to_string_pretty(&r).unwrap().trim(), s.trim());
    let s = ok(&["--type", "A", "--rank", "2", "--n", "1", "roots"]);
    let r: RootsOutput = serde_json::from_str(&s).unwrap();
    assert_eq!(r.root_data.h, 3);
}

#[test]
fn chamber_commands() {
    let s = ok(&["--type", "A", "--rank", "2", "--n", "4", "chambers", "--count-only"]);
    let c: ChambersOutput = serde_json::from_str(&s).unwrap();
    assert_eq!(c.count, "22");
    let s = ok(&["--type", "A", "--rank", "2", "--n", "4", "chambers", "--in-F"]);
    let c: ChambersOutput = serde_json::from_str(&s).unwrap();
    assert_eq!(c.count, "22");
    assert_eq!(c.report.unwrap().chambers.len(), 22);
    let s = ok(&["--type", "A", "--rank", "2", "--n", "4", "chambers", "--total", "--count-only"]);
    assert_eq!(serde_json::from_str::<ChambersOutput>(&s).unwrap().count, "264");
    let s = ok(&["--type", "A", "--rank", "1", "--n", "3", "chambers", "--total", "--jobs", "2"]);
    assert_eq!(serde_json::from_str::<ChambersOutput>(&s).unwrap().count, "12");
    let s = ok(&["--type", "A", "--rank", "1", "--n", "3", "chambers", "--in-F"]);
    assert_eq!(serde_json::from_str::<ChambersOutput>(&s).unwrap().count, "3");
}

#[test]
fn output_is_byte_stable() {
    let args = ["--type", "D", "--rank", "4", "--n", "2", "chambers", "--in-F", "--jobs", "3"];
    assert_eq!(ok(&args), ok(&args));
    let args = ["--type", "A", "--rank", "2", "--n", "3", "analyze", "--wall", "delta"];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn analyze_theta() {
    // C- witness for (A_2, n=2): theta_i = 1, theta_0 = 1/4 - 2.
    let s = ok(&["--type", "A", "--rank", "2", "--n", "2", "analyze", "--theta", "-7/4,1,1"]);
    let a: AnalyzeOutput = serde_json::from_str(&s).unwrap();
    assert_eq!(a.chamber_label.as_deref(), Some("C-"));
    assert_eq!(a.ample_model_tag, Some(AmpleModelTag::HilbScheme));
    assert!(a.wall.is_none());
    // A full vector on I must satisfy theta(v) = 0.
    assert_eq!(code(&["--type", "A", "--rank", "2", "--n", "2", "analyze", "--theta", "1,1,1,1"]), Some(2));
    let s = ok(&["--type", "A", "--rank", "2", "--n", "2", "analyze", "--theta", "-1/2,-7/4,1,1"]);
    let b: AnalyzeOutput = serde_json::from_str(&s).unwrap();
    assert_eq!(b.theta, a.theta);
    assert_eq!(code(&["--type", "A", "--rank", "2", "--n", "2", "analyze", "--theta", "1/0,1,1"]), Some(2));
    assert_eq!(code(&["--type", "A", "--rank", "2", "--n", "2", "analyze", "--theta", "x,1,1"]), Some(2));
    assert_eq!(code(&["--type", "A", "--rank", "2", "--n", "2", "analyze", "--theta", "1,1"]), Some(2));
}

#[test]
fn analyze_walls() {
    let s = ok(&["--type", "A", "--rank", "1", "--n", "2", "analyze", "--wall", "1,0"]);
    let a: AnalyzeOutput = serde_json::from_str(&s).unwrap();
    let w = a.wall.unwrap();
    assert_eq!(w.audit.wall.wall_class, WallClass::RealInternal);
    assert_eq!(w.contraction, Contraction::Flop);
    assert_eq!(w.audit.strata.len(), 2);

    let s = ok(&["--type", "A", "--rank", "1", "--n", "3", "analyze", "--wall", "delta"]);
    let a: AnalyzeOutput = serde_json::from_str(&s).unwrap();
    let w = a.wall.unwrap();
    assert_eq!(w.contraction, Contraction::Divisorial);
    let mut parts: Vec<Vec<i64>> = w
        .audit
        .strata
        .iter()
        .map(|s| match &s.model.model_label {
            ModelLabel::HilbertChowProduct { partition } => partition.clone(),
            other => panic!("{other:?}"),
        })
        .collect();
    parts.sort();
    assert_eq!(parts, vec![vec![1, 1, 1], vec![2, 1], vec![3]]);
    assert_eq!(code(&["--type", "A", "--rank", "1", "--n", "3", "analyze", "--wall", "1,1,1"]), Some(2));
}

#[test]
fn plot_and_mori() {
    let s = ok(&["--type", "A", "--rank", "2", "--n", "4", "plot"]);
    let p: PlotOutput = serde_json::from_str(&s).unwrap();
    assert_eq!((p.count, p.unbounded), (22, 7));
    let s = ok(&["--type", "A", "--rank", "2", "--n", "4", "plot", "--format", "svg-data"]);
    let svg: SvgOutput = serde_json::from_str(&s).unwrap();
    assert_eq!(svg.paths.len(), 22);
    assert_eq!(code(&["--type", "A", "--rank", "2", "--n", "1", "plot"]), Some(0));
    assert_eq!(code(&["--type", "A", "--rank", "1", "--n", "2", "plot"]), Some(2));
    assert_eq!(code(&["--type", "A", "--rank", "1", "--n", "2", "roots", "--format", "svg-data"]), Some(2));
    let s = ok(&["--type", "A", "--rank", "1", "--n", "2", "mori"]);
    let m: MoriReport = serde_json::from_str(&s).unwrap();
    assert_eq!(m.chambers.len(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["--type", "Z", "--rank", "0", "roots"]), Some(2));
    assert_eq!(code(&["--type", "E", "--rank", "5", "roots"]), Some(2));
    assert_eq!(code(&["--type", "A", "--rank", "2", "--n", "0", "roots"]), Some(2));
    assert_eq!(code(&["--type", "A", "--rank", "2", "--n", "4", "chambers", "--max-regions", "5"]), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_mckay"))
        .args(["--type", "A", "--rank", "2", "--n", "4", "chambers"])
        .env("MCKAY_MAX_REGIONS", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["--type", "TRIVIAL", "--rank", "0", "--n", "2", "chambers", "--total"]), Some(0));
}
