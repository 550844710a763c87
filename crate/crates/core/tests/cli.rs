use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use degree_ramsey::generators;
use degree_ramsey::io::write_edge_list;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn run(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degree-ramsey"))
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn manifest(dir: &Path) -> String {
    dir.join("manifest.txt").display().to_string()
}

#[test]
fn build_q_then_verify_girth() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["build-q", "--q", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("girth: 8"));
    assert!(dir.path().join("graph.edges").exists());
    let labels = fs::read_to_string(dir.path().join("labels.txt")).unwrap();
    assert_eq!(labels.lines().next(), Some("0 P(0,0,0)"));
    assert_eq!(labels.lines().count(), 250);

    let v = run(
        dir.path(),
        &[
            "verify",
            "--manifest",
            &manifest(dir.path()),
            "--girth",
            "8",
        ],
    );
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    let v = run(
        dir.path(),
        &[
            "verify",
            "--manifest",
            &manifest(dir.path()),
            "--girth",
            "10",
        ],
    );
    assert_eq!(v.status.code(), Some(1));
    let v = run(
        dir.path(),
        &[
            "verify",
            "--manifest",
            &manifest(dir.path()),
            "--cycle",
            "6",
        ],
    );
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn build_shifted_copies() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["build-q", "--q", "7", "--shift", "1,-2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("shift: 1,5"));
    let o = run(dir.path(), &["build-h", "--q", "5", "--shift", "1,2,3,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("girth: 12"));
    let o = run(dir.path(), &["build-q", "--q", "5", "--shift", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn planted_hexagon_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["cover-complete", "--n", "30", "--girth", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let m = manifest(dir.path());

    // Move the hexagon 0-1-2-3-4-5 into part 0's file.
    let hexagon = ["0 1", "1 2", "2 3", "3 4", "4 5", "0 5"];
    let parts = dir.path().join("parts");
    let mut files: Vec<_> = fs::read_dir(&parts)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    for f in &files {
        let text = fs::read_to_string(f).unwrap();
        let kept: Vec<&str> = text
            .lines()
            .skip(1)
            .filter(|l| !hexagon.contains(l))
            .collect();
        fs::write(f, format!("30 {}\n{}\n", kept.len(), kept.join("\n"))).unwrap();
    }
    let first = &files[0];
    let text = fs::read_to_string(first).unwrap();
    let mut lines: Vec<&str> = text.lines().skip(1).filter(|l| !l.is_empty()).collect();
    lines.extend(hexagon);
    fs::write(first, format!("30 {}\n{}\n", lines.len(), lines.join("\n"))).unwrap();

    let v = run(dir.path(), &["verify", "--manifest", &m, "--cycle", "6"]);
    assert_eq!(v.status.code(), Some(1), "{}", stdout(&v));
    assert!(stdout(&v).contains("exact: true"));
    assert!(stdout(&v).contains("result: fail"));
}

#[test]
fn tampering_with_an_edge_flips_the_result() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(
            dir.path(),
            &["partition-bipartite", "--q", "5", "--arity", "3"]
        )
        .status
        .code(),
        Some(0)
    );
    let m = manifest(dir.path());
    assert_eq!(
        run(dir.path(), &["verify", "--manifest", &m]).status.code(),
        Some(0)
    );

    let part = dir.path().join("parts").join("part_0003.edges");
    let text = fs::read_to_string(&part).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    // Redirect one edge to a vertex pair already covered by another part.
    lines[1] = "0 125".into();
    lines[1..].sort();
    lines[1..].reverse();
    fs::write(&part, lines.join("\n") + "\n").unwrap();
    let v = run(dir.path(), &["verify", "--manifest", &m]);
    assert_eq!(v.status.code(), Some(1), "{}", stdout(&v));
    assert!(stdout(&v).contains("exact: false"));
}

#[test]
fn decompose_writes_a_verified_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = generators::random_regular(300, 10, &mut rng).unwrap();
    let input = dir.path().join("g.edges");
    write_edge_list(&g, &input).unwrap();
    let o = run(
        dir.path(),
        &[
            "decompose",
            "--input",
            input.to_str().unwrap(),
            "--cycle",
            "6",
            "--seed",
            "4",
            "--multiplier",
            "30",
        ],
    );
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("seed: 4"));
    assert!(text.contains("config.rng_seed: 4"));
    assert!(text.contains("round 0:"));
    let v = run(
        dir.path(),
        &[
            "verify",
            "--manifest",
            &manifest(dir.path()),
            "--cycle",
            "6",
        ],
    );
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn decompose_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.edges");
    fs::write(&input, "3 2\n0 1\n1 0\n").unwrap();
    let o = run(
        dir.path(),
        &[
            "decompose",
            "--input",
            input.to_str().unwrap(),
            "--cycle",
            "6",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    let o = run(
        dir.path(),
        &[
            "decompose",
            "--input",
            input.to_str().unwrap(),
            "--cycle",
            "8",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn random_cover_with_seed_graph() {
    let dir = tempfile::tempdir().unwrap();
    let seed = dir.path().join("petersen.edges");
    write_edge_list(&generators::petersen(), &seed).unwrap();
    let o = run(
        dir.path(),
        &[
            "random-cover",
            "--n",
            "20",
            "--k",
            "2",
            "--seed-graph",
            seed.to_str().unwrap(),
            "--seed",
            "3",
        ],
    );
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("copies: 342"));
    assert!(text.contains("rng_seed: 3"));
    assert_eq!(
        run(
            dir.path(),
            &[
                "verify",
                "--manifest",
                &manifest(dir.path()),
                "--girth",
                "5"
            ]
        )
        .status
        .code(),
        Some(0)
    );

    // Petersen has 5-cycles, so it cannot seed a C6-free cover.
    let o = run(
        dir.path(),
        &[
            "random-cover",
            "--n",
            "20",
            "--k",
            "3",
            "--seed-graph",
            seed.to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn random_cover_builtin_seed() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["random-cover", "--n", "250", "--k", "3"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("seed: quadrangle(q=5)"));
    assert!(text.contains("rate_exponent: 2/3"));
    let o = run(dir.path(), &["random-cover", "--n", "250", "--k", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bounds_output() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["bounds", "--k", "3", "--s", "100"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(text.contains("lower_bound_exponent: 3/2"));
    assert!(text.contains("tight_order: R_Δ(C6, s) = Θ(s^(3/2))"));
    let o = run(dir.path(), &["bounds", "--k", "2", "--s", "4", "--ck", "1"]);
    assert!(stdout(&o).contains("upper_bound_exact: 15"));
    let o = run(
        dir.path(),
        &["bounds", "--k", "3", "--s", "4", "--ck", "half"],
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(dir.path(), &["cover-complete", "--n", "10", "--girth", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(
            dir.path(),
            &["verify", "--manifest", "/nonexistent/manifest.txt"]
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
}
