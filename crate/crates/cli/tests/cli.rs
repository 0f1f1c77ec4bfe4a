use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn diwidth(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diwidth"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("run diwidth")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn fixtures() -> TempDir {
    let dir = TempDir::new().unwrap();
    write(&dir, "e.dce", "(a+b)*c\n");
    write(&dir, "star.dce", "c * (l1 + l2 + l3)\n");
    write(&dir, "chain.dce", "a / b / c\n");
    write(&dir, "t3.txt", "3 3\na\nb\nc\na b\nb c\na c\n");
    write(&dir, "k3.txt", "3 6\na\nb\nc\na b\nb a\nb c\nc b\na c\nc a\n");
    write(&dir, "c4.txt", "4 4\na\nb\nc\nd\na b\nb c\nc d\nd a\n");
    write(&dir, "path.txt", "# a -> b -> c\n3 2\na\nb\nc\na b\nb c\n");
    dir
}

#[test]
fn width_reports() {
    let dir = fixtures();
    for (file, expected) in [
        ("e.dce", "dpw=1 dtw=1\n"),
        ("t3.txt", "dpw=0 dtw=0\n"),
        ("k3.txt", "dpw=2 dtw=2\n"),
    ] {
        let o = diwidth(&["width", file], dir.path());
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), expected);
    }
}

#[test]
fn batch_output_is_sorted_and_atomic() {
    let dir = fixtures();
    let o = diwidth(
        &["width", "t3.txt", "e.dce", "k3.txt", "-o", "summary.txt", "--out-dir", "reports"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        fs::read_to_string(dir.path().join("summary.txt")).unwrap(),
        "e.dce: dpw=1 dtw=1\nk3.txt: dpw=2 dtw=2\nt3.txt: dpw=0 dtw=0\n"
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("reports/k3.txt.report")).unwrap(),
        "dpw=2 dtw=2\n"
    );
}

#[test]
fn structured_reports_verify_at_their_width() {
    let dir = fixtures();
    for file in ["e.dce", "star.dce", "c4.txt", "k3.txt", "path.txt"] {
        let o = diwidth(&["width", "--format", "structured", file, "-o", "report"], dir.path());
        assert_eq!(o.status.code(), Some(0), "{file}");
        let report = fs::read_to_string(dir.path().join("report")).unwrap();
        let dpw = report
            .lines()
            .find_map(|l| l.strip_prefix("dpw="))
            .unwrap()
            .to_string();
        let v = diwidth(&["verify", file, "report"], dir.path());
        assert_eq!(v.status.code(), Some(0), "{file}");
        assert_eq!(stdout(&v), format!("valid width={dpw}\n"));
    }
}

#[test]
fn decompose_examples() {
    let dir = fixtures();
    let o = diwidth(&["decompose", "chain.dce"], dir.path());
    assert_eq!(stdout(&o), "kind=path\nbag={a}\nbag={b}\nbag={c}\n");

    let o = diwidth(&["decompose", "--kind", "tree", "star.dce", "-o", "star.tree"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let tree = fs::read_to_string(dir.path().join("star.tree")).unwrap();
    assert_eq!(tree.lines().filter(|l| l.starts_with("node")).count(), 4);
    let v = diwidth(&["verify", "star.dce", "star.tree"], dir.path());
    assert_eq!(stdout(&v), "valid width=1\n");

    let tampered = tree.replacen("X={c}", "X={}", 1);
    write(&dir, "bad.tree", &tampered);
    let v = diwidth(&["verify", "star.dce", "bad.tree"], dir.path());
    assert_eq!(v.status.code(), Some(1));
    let text = stdout(&v);
    assert!(text.starts_with("invalid"));
    assert!(text.contains("dtw-2 witness: walk l1 c l1"), "{text}");

    let o = diwidth(&["decompose", "--kind", "tree", "c4.txt"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("kind=tree\n"));
}

#[test]
fn verify_errors() {
    let dir = fixtures();
    write(&dir, "unknown.path", "kind=path\nbag={a,q}\n");
    let v = diwidth(&["verify", "chain.dce", "unknown.path"], dir.path());
    assert_eq!(v.status.code(), Some(2));
    write(&dir, "garbage", "bag={a}\n");
    let v = diwidth(&["verify", "chain.dce", "garbage"], dir.path());
    assert_eq!(v.status.code(), Some(2));
    write(&dir, "rev.path", "kind=path\nbag={b}\nbag={a}\nbag={c}\n");
    let v = diwidth(&["verify", "--format", "structured", "chain.dce", "rev.path"], dir.path());
    assert_eq!(v.status.code(), Some(1));
    assert_eq!(
        stdout(&v),
        "valid=false\nwidth=0\nviolation=dpw-2 witness: arc (a,b)\n"
    );
}

#[test]
fn exit_codes_for_bad_input_and_caps() {
    let dir = fixtures();
    write(&dir, "mixed.dce", "a + b * c\n");
    assert_eq!(diwidth(&["width", "mixed.dce"], dir.path()).status.code(), Some(2));
    assert_eq!(diwidth(&["width", "missing.dce"], dir.path()).status.code(), Some(2));
    let o = diwidth(&["oracle", "--oracle-cap", "3", "c4.txt"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    let o = diwidth(&["width", "--oracle-cap", "3", "c4.txt"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    // The worst outcome of a batch decides the exit code.
    let o = diwidth(&["width", "--oracle-cap", "3", "c4.txt", "mixed.dce", "e.dce"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o), "e.dce: dpw=1 dtw=1\n");
}

#[test]
fn oracle_and_recognize() {
    let dir = fixtures();
    let o = diwidth(&["oracle", "c4.txt", "k3.txt"], dir.path());
    assert_eq!(stdout(&o), "c4.txt: dpw=1\nk3.txt: dpw=2\n");
    let o = diwidth(&["recognize", "k3.txt"], dir.path());
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "(a * b * c)\n".to_string()));
    let o = diwidth(&["recognize", "c4.txt"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn condense_examples() {
    let dir = fixtures();
    let o = diwidth(&["condense", "path.txt"], dir.path());
    assert_eq!(
        stdout(&o),
        "components=3\ncomponent=0 vertices={a}\ncomponent=1 vertices={b}\n\
         component=2 vertices={c}\nexpression=du(a, du(b, c; b->c); a->b)\n"
    );
    let o = diwidth(&["condense", "c4.txt"], dir.path());
    assert!(stdout(&o).starts_with("components=1\n"));
}

#[test]
fn generation_is_reproducible() {
    let dir = fixtures();
    let o = diwidth(&["generate", "--seed", "1", "--count", "1", "--min-size", "1", "--max-size", "1"], dir.path());
    assert_eq!(stdout(&o), "v1\n");

    let args = ["generate", "--seed", "7", "--count", "100", "--min-size", "2", "--max-size", "9"];
    let mut a = args.to_vec();
    a.extend(["--out-dir", "a"]);
    let mut b = args.to_vec();
    b.extend(["--out-dir", "b", "--mix", "2:1:1:0"]);
    assert_eq!(diwidth(&a, dir.path()).status.code(), Some(0));
    assert_eq!(diwidth(&b, dir.path()).status.code(), Some(0));
    let mut files: Vec<_> = fs::read_dir(dir.path().join("a"))
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    files.sort();
    assert_eq!(files.len(), 100);
    for f in &files {
        let x = fs::read(dir.path().join("a").join(f)).unwrap();
        let y = fs::read(dir.path().join("b").join(f)).unwrap();
        assert_eq!(x, y);
    }
    let inputs: Vec<String> = files
        .iter()
        .map(|f| format!("a/{}", f.to_string_lossy()))
        .collect();
    let mut args = vec!["width"];
    args.extend(inputs.iter().map(String::as_str));
    let o = diwidth(&args, dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 100);
}

#[test]
fn dot_export() {
    let dir = fixtures();
    let o = diwidth(&["export-dot", "path.txt"], dir.path());
    assert!(stdout(&o).starts_with("digraph"));
    diwidth(&["decompose", "star.dce", "-o", "star.path"], dir.path());
    let o = diwidth(&["export-dot", "star.path"], dir.path());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph path_decomposition"));
    assert!(dot.contains("b0 [label=\"{c,l1}\"];"));
    assert!(dot.contains("b1 -> b2;"));
    let o = diwidth(&["decompose", "--format", "dot", "star.dce"], dir.path());
    assert_eq!(stdout(&o), dot);
}
