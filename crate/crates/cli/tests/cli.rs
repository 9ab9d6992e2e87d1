use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_macrolearn"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn learning_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    for out in [&a, &b] {
        let o = run(&["learn", "--domain", "npuzzle", "--param", "3", "--seed", "5", "--out", p(out)]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().lines().count() > 1);
}

#[test]
fn open_grid_learns_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    let o = run(&[
        "learn", "--domain", "grid", "--param", "12", "--walls", "none", "--seed", "2", "--out", p(&out),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("macros = 0"));
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).count(), 0);
}

fn write_problem(dir: &Path, name: &str, initial: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, format!("domain npuzzle param 3\n{initial}\n1 2 3 4 5 6 7 8 0\n")).unwrap();
    path
}

#[test]
fn solving_the_goal_prints_an_empty_solution() {
    let dir = tempfile::tempdir().unwrap();
    let prob = write_problem(dir.path(), "id.txt", "1 2 3 4 5 6 7 8 0");
    let o = run(&["solve", "--problem", p(&prob), "--validate"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(""));
    assert!(lines.next().unwrap().contains("solution_length=0"));
    assert!(out.contains("validated=true"));
}

#[test]
fn unsolvable_instance_with_small_depth_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let prob = write_problem(dir.path(), "odd.txt", "2 1 3 4 5 6 7 8 0");
    let o = run(&["solve", "--problem", p(&prob), "--depth-limit", "4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn validated_solution_replays() {
    let dir = tempfile::tempdir().unwrap();
    let prob = write_problem(dir.path(), "p.txt", "4 0 6 3 8 2 1 5 7");
    let o = run(&["solve", "--problem", p(&prob), "--validate"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let moves = out.lines().next().unwrap();
    assert!(out.contains("validated=true"));
    let len: usize = out
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix("solution_length="))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(len, moves.len());
}

#[test]
fn bench_aggregates_match_the_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("b.csv");
    let o = run(&[
        "bench", "--domain", "npuzzle", "--param", "3", "--solver", "hill-climbing", "--count", "6", "--seed", "9",
        "--out", p(&csv_path),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(csv_path).unwrap();
    let header = r.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 8);
    let id = col("problem_id");
    for name in ["operator_applications", "solution_length", "generated"] {
        let c = col(name);
        let xs: Vec<f64> = rows[..6].iter().map(|row| row[c].parse().unwrap()).collect();
        let mean = xs.iter().sum::<f64>() / 6.0;
        let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 5.0).sqrt();
        assert_eq!(&rows[6][id], "mean");
        assert_eq!(&rows[7][id], "std");
        assert!((rows[6][c].parse::<f64>().unwrap() - mean).abs() < 1e-3, "{name}");
        assert!((rows[7][c].parse::<f64>().unwrap() - sd).abs() < 1e-3, "{name}");
    }
}

fn parse_tiles(line: &str) -> Vec<u32> {
    line.split_whitespace().map(|t| t.parse().unwrap()).collect()
}

// Independent solvability test: sliding the blank sideways keeps the tile
// inversion count; sliding it vertically changes it by N - 1. So inversion
// parity is invariant on odd widths, and inversions plus blank row on even
// widths.
fn parity_class(n: usize, tiles: &[u32]) -> usize {
    let t: Vec<u32> = tiles.iter().copied().filter(|&x| x != 0).collect();
    let inv = (0..t.len()).flat_map(|i| (i + 1..t.len()).map(move |j| (i, j))).filter(|&(i, j)| t[i] > t[j]).count();
    let blank_row = tiles.iter().position(|&x| x == 0).unwrap() / n;
    if n % 2 == 1 {
        inv % 2
    } else {
        (inv + blank_row) % 2
    }
}

#[test]
fn even_permutation_problems_are_solvable() {
    for n in ["3", "4"] {
        let dir = tempfile::tempdir().unwrap();
        let o = run(&[
            "gen", "--domain", "npuzzle", "--param", n, "--method", "even-permutation", "--count", "100", "--seed",
            "4", "--out", p(dir.path()),
        ]);
        assert!(o.status.success());
        let side: usize = n.parse().unwrap();
        for i in 0..100 {
            let text = std::fs::read_to_string(dir.path().join(format!("problem_{i:03}.txt"))).unwrap();
            let lines: Vec<&str> = text.lines().collect();
            let (a, b) = (parse_tiles(lines[1]), parse_tiles(lines[2]));
            assert_eq!(parity_class(side, &a), parity_class(side, &b), "N={n} problem {i}");
        }
    }
}

#[test]
fn generation_is_deterministic_per_seed() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let o = run(&[
            "gen", "--domain", "cannibals", "--param", "6", "--length", "40", "--count", "5", "--seed", "8", "--out",
            p(dir.path()),
        ]);
        assert!(o.status.success());
    }
    for i in 0..5 {
        let name = format!("problem_{i:03}.txt");
        assert_eq!(std::fs::read(a.path().join(&name)).unwrap(), std::fs::read(b.path().join(&name)).unwrap());
    }
}

#[test]
fn zero_length_walk_starts_at_the_goal() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["gen", "--domain", "hanoi", "--param", "4", "--length", "0", "--count", "2", "--out", p(dir.path())]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("problem_001.txt")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], lines[2]);
}

#[test]
fn table_vectors_check_passes() {
    let o = run(&["verify", "--param", "3", "--check", "table-vectors"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("check=table-vectors status=pass"));
}

#[test]
fn configuration_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "no_such_key = 1\n").unwrap();
    assert_eq!(run(&["learn", "--config", p(&cfg)]).status.code(), Some(2));
    assert_eq!(run(&["learn", "--domain", "npuzzle", "--param", "2"]).status.code(), Some(2));
    assert_eq!(run(&["learn", "--domain", "chess"]).status.code(), Some(2));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "domain = \"npuzzle\"\nparam = 5\nseed = 3\n").unwrap();
    let o = run(&["learn", "--config", p(&cfg), "--param", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("param = 3"));
    assert!(out.contains("seed = 3"));
}
