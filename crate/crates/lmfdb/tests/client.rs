use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;
use std::time::Duration;

use angrank_lmfdb::*;
use num_bigint::BigInt;

struct Stub {
    url: String,
    hits: Arc<AtomicUsize>,
}

/// Serves the canned `(status, body)` responses in order, then closes.
fn stub(responses: Vec<(u16, String)>) -> Stub {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}", listener.local_addr().unwrap());
    let hits = Arc::new(AtomicUsize::new(0));
    let h = hits.clone();
    thread::spawn(move || {
        for (status, body) in responses {
            let Ok((stream, _)) = listener.accept() else { return };
            h.fetch_add(1, Ordering::SeqCst);
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut line = String::new();
            while reader.read_line(&mut line).is_ok() {
                if line == "\r\n" || line.is_empty() {
                    break;
                }
                line.clear();
            }
            let mut stream = stream;
            let _ = write!(
                stream,
                "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
        }
    });
    Stub { url, hits }
}

fn config(url: &str, dir: &std::path::Path, offline: bool) -> ClientConfig {
    ClientConfig {
        base_url: url.to_string(),
        cache_dir: dir.to_path_buf(),
        offline,
        backoff: Duration::from_millis(1),
        requests_per_second: 0.0,
        timeout: Duration::from_secs(5),
        ..ClientConfig::default()
    }
}

const ROW: &str = r#"{"data": [{"label": "3.2.a_ab_ac", "poly": [8, 0, -2, -2, -1, 0, 1], "angle_rank": 2, "galois_groups": ["6T3"], "g": 3}]}"#;

#[test]
fn offline_mode_makes_no_requests() {
    let s = stub(vec![(200, ROW.into())]);
    let dir = tempfile::tempdir().unwrap();
    let c = Client::new(config(&s.url, dir.path(), true));
    let err = c.fetch_isogeny_class("3.2.a_ab_ac").unwrap_err();
    assert!(matches!(err, LmfdbError::Offline(_)), "{err}");
    thread::sleep(Duration::from_millis(50));
    assert_eq!(c.requests_made(), 0);
    assert_eq!(s.hits.load(Ordering::SeqCst), 0);
}

#[test]
fn fetch_writes_cache_and_round_trips() {
    let s = stub(vec![(200, ROW.into())]);
    let dir = tempfile::tempdir().unwrap();
    let c = Client::new(config(&s.url, dir.path(), false));
    let rec = c.fetch_isogeny_class("3.2.a_ab_ac").unwrap();
    assert_eq!(rec.poly_coeffs, vec![8, 0, -2, -2, -1, 0, 1]);
    assert_eq!(rec.angle_rank, Some(2));
    assert_eq!(rec.galois_data["galois_groups"][0], "6T3");
    let text = std::fs::read_to_string(c.cache_path("3.2.a_ab_ac")).unwrap();
    assert_eq!(text, rec.to_canonical_json());
    assert_eq!(LmfdbRecord::from_json(&text).unwrap(), rec);

    let off = Client::new(config(&s.url, dir.path(), true));
    assert_eq!(off.fetch_isogeny_class("3.2.a_ab_ac").unwrap(), rec);
    assert_eq!(s.hits.load(Ordering::SeqCst), 1);
    assert_eq!(load_cache_dir(dir.path()).unwrap(), vec![rec]);
}

#[test]
fn descending_coefficients_are_normalized() {
    let body = r#"{"data": [{"label": "1.2.ab", "poly": [1, -1, 2]}]}"#;
    let rec = parse_response("1.2.ab", body, "t").unwrap();
    assert_eq!(rec.poly_coeffs, vec![2, -1, 1]);
    assert_eq!(rec.angle_rank, None);
}

#[test]
fn retries_with_backoff() {
    let s = stub(vec![(503, String::new()), (500, String::new()), (200, ROW.into())]);
    let dir = tempfile::tempdir().unwrap();
    let c = Client::new(config(&s.url, dir.path(), false));
    assert!(c.fetch_isogeny_class("3.2.a_ab_ac").is_ok());
    assert_eq!(c.requests_made(), 3);

    let s = stub(vec![(500, String::new()); 3]);
    let dir = tempfile::tempdir().unwrap();
    let c = Client::new(config(&s.url, dir.path(), false));
    match c.fetch_isogeny_class("3.2.a_ab_ac") {
        Err(LmfdbError::Http { attempts: 3, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_labels() {
    let dir = tempfile::tempdir().unwrap();
    let c = Client::new(config("http://127.0.0.1:9", dir.path(), false));
    assert!(matches!(c.fetch_isogeny_class("9.9.z"), Err(LmfdbError::NotFound(_))));
    assert_eq!(c.requests_made(), 0);

    let s = stub(vec![(200, r#"{"data": []}"#.into())]);
    let c = Client::new(config(&s.url, dir.path(), false));
    assert!(matches!(c.fetch_isogeny_class("1.2.ab"), Err(LmfdbError::NotFound(_))));
    let s = stub(vec![(404, String::new())]);
    let c = Client::new(config(&s.url, dir.path(), false));
    assert!(matches!(c.fetch_isogeny_class("1.2.ab"), Err(LmfdbError::NotFound(_))));
}

#[test]
fn schema_drift_names_the_field() {
    let e = parse_response("3.2.a_ab_ac", r#"{"rows": []}"#, "t").unwrap_err();
    assert!(matches!(&e, LmfdbError::SchemaDrift(f) if f == "data"), "{e}");
    let e = parse_response("3.2.a_ab_ac", r#"{"data": [{"label": "3.2.a_ab_ac"}]}"#, "t").unwrap_err();
    assert!(matches!(&e, LmfdbError::SchemaDrift(f) if f == "poly"), "{e}");
    let e = parse_response("3.2.a_ab_ac", r#"{"data": [{"label": "3.2.a_ab_ac", "poly": [8,0,-2,-2,-1,0,1], "angle_rank": "two"}]}"#, "t")
        .unwrap_err();
    assert!(matches!(&e, LmfdbError::SchemaDrift(f) if f == "angle_rank"), "{e}");
    let e = parse_response("3.2.a_ab_ac", r#"{"data": [{"label": "3.2.a_ab_ac", "poly": [8,0,-2,-2,-1,1,1]}]}"#, "t")
        .unwrap_err();
    assert!(matches!(e, LmfdbError::Inconsistent { .. }));
}

#[test]
fn cross_validation_diffs() {
    let rec = parse_response("3.2.a_ab_ac", ROW, "t").unwrap();
    let ours = Computed {
        label: "3.2.a_ab_ac".into(),
        coeffs: rec.poly_coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        angle_rank: 2,
    };
    assert!(cross_validate(&ours, &rec).unwrap().is_empty());

    let bad = Computed { angle_rank: 3, ..ours.clone() };
    let d = cross_validate(&bad, &rec).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].kind, DiffKind::Mismatch);
    assert_eq!(d[0].field, "angle_rank");

    let bare = LmfdbRecord { angle_rank: None, ..rec.clone() };
    let d = cross_validate(&ours, &bare).unwrap();
    assert!(d.iter().all(|x| x.kind == DiffKind::Informational) && d.len() == 1);

    let other = Computed { label: "3.2.a_a_ac".into(), ..ours };
    assert!(matches!(cross_validate(&other, &rec), Err(LmfdbError::LabelMismatch { .. })));
}
