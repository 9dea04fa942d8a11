use std::process::{Command, Output};

fn pascalmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pascalmod"))
        .args(args)
        .env(
            "PASCALMOD_OEIS_CACHE",
            std::env::temp_dir().join("pascalmod-cli-test-empty"),
        )
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn seq_prints_terms() {
    let o = pascalmod(&["seq", "t", "-p", "2", "-n", "9"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\n3\n5\n15\n17\n51\n85\n255\n257\n");
    let o = pascalmod(&["seq", "N", "-n", "18"]);
    let vals: Vec<u64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(
        vals,
        [0, 3, 6, 5, 12, 15, 10, 9, 24, 27, 30, 29, 20, 23, 18, 17, 48, 51]
    );
}

#[test]
fn seq_bfile_honors_offsets() {
    let o = pascalmod(&["seq", "sub", "--root", "7", "-n", "3", "--bfile"]);
    assert_eq!(stdout(&o), "1 9\n2 27\n3 45\n");
    let o = pascalmod(&["seq", "evil", "-n", "2", "--bfile"]);
    assert_eq!(stdout(&o), "0 0\n1 3\n");
    let o = pascalmod(&["seq", "poly-eval", "--x", "-1", "-n", "4"]);
    assert_eq!(stdout(&o), "1\n0\n2\n0\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pascalmod(&["seq", "nope"]).status.code(), Some(2));
    assert_eq!(pascalmod(&["seq", "t", "-p", "6"]).status.code(), Some(2));
    assert_eq!(pascalmod(&["seq", "t", "-n", "0"]).status.code(), Some(2));
    assert_eq!(
        pascalmod(&["render", "triangle", "--rows", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(pascalmod(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["seq", "alpha", "-p", "3", "-n", "200"][..],
        &[
            "render", "triangle", "-p", "5", "--rows", "25", "--format", "svg",
        ],
        &["dfa", "export", "composed", "-p", "3"],
        &["oeis", "verify", "all"],
    ] {
        assert_eq!(pascalmod(args).stdout, pascalmod(args).stdout, "{args:?}");
    }
}

#[test]
fn render_triangle_writes_pgm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.pgm");
    let o = pascalmod(&[
        "render",
        "triangle",
        "-p",
        "5",
        "--rows",
        "5",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let r = pascalmod_cli::render::parse_pgm(&text).unwrap();
    assert_eq!((r.width, r.height, r.maxval), (9, 5, 4));
    let row3: Vec<u32> = (0..4).map(|i| r.get(1 + 2 * i, 3)).collect();
    assert_eq!(row3, [1, 3, 3, 1]);
}

#[test]
fn render_io_errors_exit_3_with_path() {
    let o = pascalmod(&[
        "render",
        "pyramid-plane",
        "-n",
        "4",
        "-o",
        "/nonexistent/dir/x.pgm",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/dir/x.pgm"));
}

#[test]
fn render_cube_slices() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cube");
    let o = pascalmod(&[
        "render",
        "pyramid-cube",
        "-p",
        "3",
        "-k",
        "1",
        "--out-dir",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let slice = std::fs::read_to_string(out.join("slice_0000.pgm")).unwrap();
    assert_eq!(slice, "P2\n3 3\n2\n1 1 1\n1 2 0\n1 0 0\n");
}

#[test]
fn plot_kinds() {
    let o = pascalmod(&["plot", "sn-se", "--start", "0", "--end", "16"]);
    let rows: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(rows[0], "M,S_N,S_e,diff");
    assert_eq!(rows[1 + 7], "7,60,60,0");
    assert_eq!(rows[1 + 15], "15,248,248,0");
    let o = pascalmod(&["plot", "parabola", "-k", "3"]);
    assert!(stdout(&o).starts_with("M,diff,parabola\n8,"));
}

#[test]
fn dfa_run_reproduces_the_worked_run() {
    let o = pascalmod(&["dfa", "run", "pair", "4", "12"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("states: 0 -> 1 -> 0 -> 0 -> 0"), "{s}");
    assert!(s.ends_with("accept\n"));
    let o = pascalmod(&["dfa", "run", "pair", "4", "13"]);
    assert!(stdout(&o).ends_with("reject\n"));
    assert_eq!(
        pascalmod(&["dfa", "run", "pair", "4"]).status.code(),
        Some(2)
    );
}

#[test]
fn dfa_export_is_dot() {
    let o = pascalmod(&["dfa", "export", "altsum", "-p", "5", "--minimize"]);
    let s = stdout(&o);
    assert!(s.starts_with("digraph"));
    assert_eq!(s.matches("doublecircle").count(), 1);
}

#[test]
fn morphism_prefix() {
    let o = pascalmod(&["morphism", "-p", "3", "--prefix", "9"]);
    assert!(stdout(&o).contains("fixed point: 021102210"));
}

#[test]
fn summatory_reports_both_routes() {
    let o = pascalmod(&["summatory", "--m", "1000", "--k", "3"]);
    let s = stdout(&o);
    let get = |key: &str| {
        s.lines()
            .find(|l| l.starts_with(key))
            .and_then(|l| l.rsplit(' ').next())
            .unwrap()
            .to_string()
    };
    assert_eq!(get("S_N(1000) ="), get("S_N(1000) brute ="));
    assert!(s.contains("at M = 11"));
}

#[test]
fn pyramid_commands() {
    let o = pascalmod(&["pyramid", "block-check", "-p", "5", "--limit", "30"]);
    assert!(o.status.success());
    let o = pascalmod(&["pyramid", "plane", "5"]);
    assert_eq!(stdout(&o), "0 1\n1 3\n2 0\n3 0\n4 17\n5 51\n");
    let o = pascalmod(&["pyramid", "translate", "23"]);
    assert!(o.status.success());
    assert!(stdout(&o)
        .contains("XToY (11, 5, 7) -> (1, 15, 7): Identity { multiplier: 3, inverse: 2 } ok"));
}

#[test]
fn oeis_verify_offline() {
    let o = pascalmod(&["oeis", "verify", "all"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.contains(" ok: ")).count(),
        8
    );
    let o = pascalmod(&["oeis", "verify", "A242399", "--no-bundled"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("offline, no fixture"));
}

#[test]
fn oeis_mismatch_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("b003188.txt"), "0 0\n1 1\n2 3\n3 3\n").unwrap();
    let o = pascalmod(&[
        "oeis",
        "verify",
        "A003188",
        "--fixtures",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH at index 3"));
    std::fs::write(dir.path().join("b003188.txt"), "0 0\n1 1\n1 3\n").unwrap();
    let o = pascalmod(&[
        "oeis",
        "verify",
        "A003188",
        "--fixtures",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn check_quick_and_fault() {
    let o = pascalmod(&["check"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("[PASS]")));
    let o = pascalmod(&["check", "--inject-fault", "mu-table"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] rows: block concatenation"));
}
