use std::fs;
use std::net::TcpListener;
use std::path::Path;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use mbtgen_core::eventlog::{format_event_log, EventKind, EventLogRecord};
use mbtgen_core::ModelDocument;

fn mbtgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mbtgen")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn convert(dir: &Path, log: &[EventLogRecord]) -> (Output, std::path::PathBuf) {
    let input = dir.join("in.ndjson");
    let output = dir.join("out.json");
    fs::write(&input, format_event_log(log)).unwrap();
    (mbtgen(&["convert", path_str(&input), "-o", path_str(&output)]), output)
}

fn load(path: &Path) -> ModelDocument {
    ModelDocument::from_json(&fs::read_to_string(path).unwrap()).unwrap()
}

fn rec(t: u64, kind: EventKind, name: Option<&str>) -> EventLogRecord {
    EventLogRecord::new(t, kind, name)
}

#[test]
fn convert_shopping_cart_log() {
    let dir = tempfile::tempdir().unwrap();
    let (out, path) = convert(
        dir.path(),
        &[
            rec(0, EventKind::Start, Some("ShoppingCart")),
            rec(100, EventKind::Vertex, Some("Amazon")),
            rec(900, EventKind::Edge, Some("Search Book")),
            rec(1_200, EventKind::Vertex, Some("Search Result")),
            rec(2_000, EventKind::Stop, None),
        ],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = load(&path);
    let m = doc.model();
    let names: Vec<_> = m.vertices.iter().map(|v| v.name.as_str()).collect();
    assert_eq!(names, ["v_Amazon", "v_SearchResult"]);
    assert_eq!(m.edges.len(), 1);
    assert_eq!(m.edges[0].name, "e_SEARCHBOOK");
    assert_eq!(m.start_element_id.as_deref(), Some(m.vertices[0].id.as_str()));
}

#[test]
fn convert_truncates_at_silent_gap() {
    let dir = tempfile::tempdir().unwrap();
    let (out, path) = convert(
        dir.path(),
        &[
            rec(0, EventKind::Start, Some("Gap")),
            rec(100, EventKind::Vertex, Some("Home")),
            rec(500, EventKind::Edge, Some("Next")),
            rec(800, EventKind::Vertex, Some("Second")),
            rec(12_800, EventKind::Edge, Some("Late")),
            rec(12_900, EventKind::Vertex, Some("Third")),
        ],
    );
    assert_eq!(code(&out), 0);
    let doc = load(&path);
    let names: Vec<_> = doc.model().vertices.iter().map(|v| v.name.as_str()).collect();
    assert_eq!(names, ["v_Home", "v_Second"]);
    assert_eq!(doc.model().edges.len(), 1);
}

#[test]
fn convert_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.ndjson");
    fs::write(&empty, "").unwrap();
    let out = mbtgen(&["convert", path_str(&empty), "-o", path_str(&dir.path().join("x.json"))]);
    assert_eq!(code(&out), 2);
    assert!(!dir.path().join("x.json").exists());

    let bad = dir.path().join("bad.ndjson");
    fs::write(&bad, "{\"t\":0,\"type\":\"start\",\"name\":\"A\"}\n{\"t\":1,\"type\":\"jump\"}\n").unwrap();
    let out = mbtgen(&["convert", path_str(&bad), "-o", path_str(&dir.path().join("x.json"))]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let missing = dir.path().join("missing.ndjson");
    let out = mbtgen(&["convert", path_str(&missing), "-o", path_str(&dir.path().join("x.json"))]);
    assert_eq!(code(&out), 3);

    let ok = dir.path().join("ok.ndjson");
    fs::write(&ok, "{\"t\":0,\"type\":\"start\",\"name\":\"A\"}\n").unwrap();
    let out = mbtgen(&["convert", path_str(&ok), "-o", path_str(&dir.path().join("x.json")), "--timeout-ms", "0"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("greater than 0"));
    let out = mbtgen(&["convert", path_str(&ok), "-o", "/nonexistent-dir-for-test/out.json"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn fixtures_match_golden_files() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let dir = tempfile::tempdir().unwrap();
    for name in ["petclinic", "taskmanager"] {
        let output = dir.path().join(format!("{name}.json"));
        let out = mbtgen(&[
            "convert",
            path_str(&fixtures.join(format!("{name}.ndjson"))),
            "-o",
            path_str(&output),
        ]);
        assert_eq!(code(&out), 0);
        let golden = fs::read_to_string(fixtures.join(format!("{name}.golden.json"))).unwrap();
        assert_eq!(fs::read_to_string(&output).unwrap(), golden, "{name}");
        assert_eq!(code(&mbtgen(&["validate", path_str(&output)])), 0);
    }
}

#[test]
fn validate_exit_codes() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let good = fixtures.join("petclinic.golden.json");
    let out = mbtgen(&["validate", path_str(&good)]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    let text = fs::read_to_string(&good)
        .unwrap()
        .replacen("\"targetVertexId\": \"n2\"", "\"targetVertexId\": \"n404\"", 1);
    fs::write(&broken, text).unwrap();
    let out = mbtgen(&["validate", path_str(&broken)]);
    assert_eq!(code(&out), 1);
    let report = String::from_utf8_lossy(&out.stdout);
    assert!(report.contains("e1") && report.contains("n404"), "{report}");

    fs::write(&broken, "this is not json").unwrap();
    let out = mbtgen(&["validate", path_str(&broken)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("syntax"));

    let out = mbtgen(&["validate", path_str(&dir.path().join("missing.json"))]);
    assert_eq!(code(&out), 3);
}

#[test]
fn serve_rejects_zero_timeout() {
    let dir = tempfile::tempdir().unwrap();
    let out = mbtgen(&["serve", "--port", "0", "--out-dir", path_str(dir.path()), "--timeout-ms", "0"]);
    assert_ne!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("greater than 0"));
}

#[test]
fn serve_reports_port_in_use() {
    let dir = tempfile::tempdir().unwrap();
    let taken = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = taken.local_addr().unwrap().port().to_string();
    let out = mbtgen(&["serve", "--port", &port, "--out-dir", path_str(dir.path())]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot listen"));
}

fn free_port() -> u16 {
    TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port()
}

async fn post(client: &reqwest::Client, base: &str, path: &str, form: &[(&str, &str)]) -> reqwest::Result<String> {
    client.post(format!("{base}{path}")).form(form).send().await?.text().await
}

#[cfg(unix)]
#[tokio::test]
async fn sigint_flushes_active_session() {
    let dir = tempfile::tempdir().unwrap();
    let port = free_port();
    let mut child = Command::new(env!("CARGO_BIN_EXE_mbtgen"))
        .args(["serve", "--port", &port.to_string(), "--out-dir", path_str(dir.path())])
        .stderr(Stdio::null())
        .spawn()
        .unwrap();
    let base = format!("http://127.0.0.1:{port}");
    let client = reqwest::Client::new();

    let deadline = Instant::now() + Duration::from_secs(10);
    let started = loop {
        match post(&client, &base, "/startrec", &[("title", "Interrupted")]).await {
            Ok(body) => break body,
            Err(_) if Instant::now() < deadline => tokio::time::sleep(Duration::from_millis(50)).await,
            Err(e) => {
                child.kill().unwrap();
                panic!("server never came up: {e}");
            }
        }
    };
    assert_eq!(started, "STARTED");
    assert_eq!(post(&client, &base, "/vertex", &[("name", "Home")]).await.unwrap(), "OK");
    assert_eq!(post(&client, &base, "/edge", &[("name", "Away")]).await.unwrap(), "OK");

    let status = Command::new("kill").args(["-INT", &child.id().to_string()]).status().unwrap();
    assert!(status.success());
    let exit = tokio::task::spawn_blocking(move || child.wait()).await.unwrap().unwrap();
    assert_eq!(exit.code(), Some(0));

    let doc = load(&dir.path().join("Interrupted.json"));
    let m = doc.model();
    assert_eq!(m.vertices.len(), 1);
    // The pending edge is closed as a self-loop on the way down.
    assert_eq!(m.edges[0].name, "e_AWAY");
}
