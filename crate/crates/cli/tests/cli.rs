use std::path::Path;
use std::process::{Command, Output};

use ncpair::bitstring::heights;
use ncpair::verify::SuiteReport;
use ncpair::Word;

fn ncpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncpair"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn render(args: &[&str], path: &Path) -> String {
    let mut all = vec!["render"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = ncpair(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read_to_string(path).unwrap()
}

/// Values of `attr="..."` on every element carrying `class="<class>"`.
fn attribute(svg: &str, class: &str, attr: &str) -> Vec<String> {
    svg.lines()
        .filter(|l| l.contains(&format!("class=\"{class}\"")))
        .map(|l| {
            let key = format!(" {attr}=\"");
            let start = l.find(&key).expect("attribute present") + key.len();
            l[start..start + l[start..].find('"').unwrap()].to_string()
        })
        .collect()
}

fn text_contents(svg: &str, class: &str) -> Vec<usize> {
    svg.lines()
        .filter(|l| l.contains(&format!("class=\"{class}\"")))
        .map(|l| {
            let start = l.find('>').unwrap() + 1;
            l[start..l.rfind('<').unwrap()].parse().unwrap()
        })
        .collect()
}

type Point = (f64, f64);

/// Samples an SVG path made of `M x y` followed by one `A` or `L` command.
fn sample_path(d: &str) -> Vec<Point> {
    let t: Vec<&str> = d.split_whitespace().collect();
    let num = |i: usize| t[i].parse::<f64>().unwrap();
    let start = (num(1), num(2));
    if t[3] == "L" {
        let end = (num(4), num(5));
        return (0..=64)
            .map(|k| {
                let s = k as f64 / 64.0;
                (start.0 + s * (end.0 - start.0), start.1 + s * (end.1 - start.1))
            })
            .collect();
    }
    let (r, large, sweep, end) = (num(4), num(7) != 0.0, num(8) != 0.0, (num(9), num(10)));
    // Endpoint to center conversion for an unrotated circular arc.
    let (hx, hy) = ((start.0 - end.0) / 2.0, (start.1 - end.1) / 2.0);
    let sign = if large != sweep { 1.0 } else { -1.0 };
    let q = (r * r - hx * hx - hy * hy).max(0.0) / (hx * hx + hy * hy);
    let coef = sign * q.sqrt();
    let center = (coef * hy + (start.0 + end.0) / 2.0, -coef * hx + (start.1 + end.1) / 2.0);
    let a0 = (start.1 - center.1).atan2(start.0 - center.0);
    let a1 = (end.1 - center.1).atan2(end.0 - center.0);
    let mut delta = a1 - a0;
    if sweep && delta < 0.0 {
        delta += 2.0 * std::f64::consts::PI;
    }
    if !sweep && delta > 0.0 {
        delta -= 2.0 * std::f64::consts::PI;
    }
    (0..=64)
        .map(|k| {
            let a = a0 + delta * k as f64 / 64.0;
            (center.0 + r * a.cos(), center.1 + r * a.sin())
        })
        .collect()
}

fn segments_cross(p: Point, q: Point, a: Point, b: Point) -> bool {
    let orient = |u: Point, v: Point, w: Point| (v.0 - u.0) * (w.1 - u.1) - (v.1 - u.1) * (w.0 - u.0);
    let (d1, d2) = (orient(a, b, p), orient(a, b, q));
    let (d3, d4) = (orient(p, q, a), orient(p, q, b));
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

fn polylines_cross(x: &[Point], y: &[Point]) -> bool {
    x.windows(2)
        .any(|s| y.windows(2).any(|t| segments_cross(s[0], s[1], t[0], t[1])))
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&ncpair(&["count", "--runs", "2,2,2,2"])).trim(), "3");
    assert_eq!(stdout(&ncpair(&["count", "--string", "1100"])).trim(), "1");
    let out = ncpair(&["count", "--string", "110"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("0\n") && text.contains("not balanced"), "{text}");
}

#[test]
fn count_reports_parse_position() {
    let out = ncpair(&["count", "--string", "10a1"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("position 3"), "{err}");
    let out = ncpair(&["count", "--runs", "2,x,2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 3"));
}

#[test]
fn count_verbose_and_json() {
    let text = stdout(&ncpair(&["count", "--runs", "3,1,1,3", "--verbose"]));
    assert!(text.starts_with("2\n"));
    assert!(text.contains("upper C^(2)_2"), "{text}");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&ncpair(&["count", "--runs", "3,3,3,3,3,3", "--format", "json"]))).unwrap();
    // Regular words attain the Fuss-Catalan bound: C^(3)_3 = 22.
    assert_eq!(json["phi"], "22");
}

#[test]
fn enumerate_examples() {
    assert_eq!(stdout(&ncpair(&["enumerate", "--string", "1010"])), "1-2,3-4\n1-4,2-3\n");
    assert_eq!(stdout(&ncpair(&["enumerate", "--string", "1100"])).lines().count(), 1);
    let truncated = stdout(&ncpair(&["enumerate", "--string", "1010", "--limit", "1"]));
    assert_eq!(truncated, "1-2,3-4\n... (1 more)\n");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&ncpair(&["enumerate", "--string", "1010", "--format", "json"]))).unwrap();
    assert_eq!(json["count"], "2");
    assert_eq!(json["pairings"][1], "1-4,2-3");
    let out = ncpair(&["enumerate", "--runs", "9,9"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("refusing"));
}

#[test]
fn chord_diagram_of_one_pairing() {
    let dir = tempfile::tempdir().unwrap();
    let svg = render(&["--string", "1010", "--what", "chord", "--pairing", "1"], &dir.path().join("c.svg"));
    assert!(svg.contains("version=\"1.1\""));
    assert_eq!(attribute(&svg, "point", "data-position").len(), 4);
    let chords = attribute(&svg, "chord", "d");
    assert_eq!(chords.len(), 2);
    assert!(!polylines_cross(&sample_path(&chords[0]), &sample_path(&chords[1])));
}

#[test]
fn chord_geometry_never_crosses() {
    let dir = tempfile::tempdir().unwrap();
    for word in ["10101010", "11001010", "1,1,2,2,1,1"] {
        let flag = if word.contains(',') { "--runs" } else { "--string" };
        let svg = render(&[flag, word, "--what", "chord"], &dir.path().join("all.svg"));
        let panels: Vec<&str> = svg.split("<g class=\"panel\"").skip(1).collect();
        assert_eq!(panels.len() as u64, ncpair::phi(&Word::parse(word).unwrap()).to_string().parse::<u64>().unwrap());
        for panel in panels {
            let curves: Vec<Vec<Point>> = attribute(panel, "chord", "d").iter().map(|d| sample_path(d)).collect();
            for (i, a) in curves.iter().enumerate() {
                for b in &curves[i + 1..] {
                    assert!(!polylines_cross(a, b), "{word}");
                }
            }
        }
    }
}

#[test]
fn crossing_pairs_would_be_detected() {
    // Sanity check of the geometric test itself.
    let a = sample_path("M 0 0 L 10 10");
    let b = sample_path("M 0 3 L 10 2");
    assert!(polylines_cross(&a, &b));
}

#[test]
fn path_heights_match() {
    let dir = tempfile::tempdir().unwrap();
    let runs = "4,2,2,5,2,1";
    let svg = render(&["--runs", runs, "--what", "path"], &dir.path().join("p.svg"));
    let expected = heights(&Word::from_run_notation(runs).unwrap()).heights;
    assert_eq!(text_contents(&svg, "height"), expected);
}

#[test]
fn rendering_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = render(&["--string", "110100", "--what", "chord"], &dir.path().join("a.svg"));
    let b = render(&["--string", "110100", "--what", "chord"], &dir.path().join("b.svg"));
    assert_eq!(a, b);
    let out = ncpair(&["render", "--string", "1010", "--pairing", "3", "--out", "/dev/null"]);
    assert!(!out.status.success());
}

#[test]
fn verify_main_theorem_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("main.json");
    let out = ncpair(&["verify", "main-theorem", "--max-n", "7", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let report: SuiteReport = serde_json::from_str(&text).unwrap();
    assert!(report.violations.is_empty());
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

#[test]
fn verify_tree_conjecture_finds_all_matchings() {
    let out = ncpair(&["verify", "tree-conjecture", "--r", "5"]);
    assert!(out.status.success());
    let report: SuiteReport = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.checked, 120);
    assert!(report.findings.is_empty() && report.violations.is_empty());
}

#[test]
fn verify_output_is_reproducible_and_parallel_safe() {
    let args = ["verify", "ginibre", "--max-n", "2", "--dim", "16", "--samples", "12", "--seed", "7"];
    let one = ncpair(&args);
    let mut with_threads = args.to_vec();
    with_threads.extend_from_slice(&["--parallel", "3"]);
    let three = ncpair(&with_threads);
    assert!(one.status.success());
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn verify_formats_and_errors() {
    let csv = stdout(&ncpair(&["verify", "bounds", "--max-n", "4", "--format", "csv"]));
    assert!(csv.starts_with("suite,kind,subject,detail\n"));
    assert!(csv.contains("bounds,summary,checked,"));
    let text = stdout(&ncpair(&["verify", "refined-conjecture", "--max-n", "5", "--format", "text"]));
    assert!(text.starts_with("refined-conjecture:"), "{text}");
    let out = ncpair(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    let strict = ncpair(&["verify", "ginibre", "--max-n", "1", "--dim", "8", "--samples", "4", "--tolerance", "0"]);
    assert_eq!(strict.status.code(), Some(1));
}
