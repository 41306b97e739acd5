mod common;

use std::time::Duration;

use common::{lmfdb_responder, MockServer};
use iwasawa_mw::hypotheses::ReductionType;
use iwasawa_mw::lmfdb::{classify_curve, Client, ClientConfig, ClientError, Provenance, BASE_URL_ENV};
use serde_json::json;

fn networked(base_url: &str, cache: Option<&std::path::Path>) -> Client {
    Client::new(ClientConfig {
        base_url: base_url.to_string(),
        timeout: Duration::from_secs(5),
        backoff: Duration::from_millis(1),
        cache_dir: cache.map(Into::into),
        fixture_dir: None,
        ..ClientConfig::default()
    })
}

#[test]
fn network_fetch_fills_cache() {
    let server = MockServer::start(lmfdb_responder("37.a1"));
    let dir = tempfile::tempdir().unwrap();
    let online = networked(&server.base_url, Some(dir.path()));
    let first = online.fetch_curve("37.a1").unwrap();
    assert_eq!(first.provenance, Provenance::Network);
    assert_eq!(first.curve.rank, Some(1));
    assert_eq!(server.hits(), 2);
    assert_eq!(
        server.paths(),
        [
            "/ec_curvedata/?lmfdb_label=37.a1&_format=json",
            "/ec_classdata/?lmfdb_iso=37.a&_format=json"
        ]
    );

    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files, ["37.a1.json"]);

    let again = online.fetch_curve("37.a1").unwrap();
    assert_eq!(again.provenance, Provenance::Cache);
    assert_eq!(server.hits(), 2);

    let offline = Client::new(ClientConfig {
        offline: true,
        cache_dir: Some(dir.path().into()),
        fixture_dir: None,
        ..ClientConfig::default()
    });
    let cached = offline.fetch_curve("37.a1").unwrap();
    assert_eq!(cached.curve, first.curve);
    assert_eq!(cached.provenance, Provenance::Cache);
}

#[test]
fn cremona_labels_query_clabel() {
    let server = MockServer::start(|path, _| {
        let (curve, class) = common::fixture_records("26b1");
        let data = if path.starts_with("/ec_curvedata/?Clabel=26b1&") {
            vec![curve]
        } else if path.starts_with("/ec_classdata/?lmfdb_iso=26.b&") {
            vec![class]
        } else {
            vec![]
        };
        (200, json!({ "data": data }).to_string())
    });
    let c = networked(&server.base_url, None);
    let k = classify_curve(&c.fetch_curve("26b1").unwrap(), 7).unwrap();
    assert_eq!((k.ap, k.reduction, k.provenance), (1, ReductionType::Ordinary, Provenance::Network));
}

#[test]
fn server_errors_are_retried() {
    let respond = lmfdb_responder("11.a2");
    let server = MockServer::start(move |path, n| if n < 2 { (503, "busy".into()) } else { respond(path, n) });
    let c = networked(&server.base_url, None);
    assert_eq!(c.fetch_curve("11.a2").unwrap().curve.conductor, Some(11));
    assert_eq!(server.hits(), 4);
}

#[test]
fn gives_up_after_retries() {
    let server = MockServer::start(|_, _| (500, String::new()));
    let c = networked(&server.base_url, None);
    match c.fetch_curve("11.a2") {
        Err(ClientError::Network { attempts, .. }) => assert_eq!(attempts, 4),
        other => panic!("expected a network error, got {other:?}"),
    }
    assert_eq!(server.hits(), 4);

    let port = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let c = networked(&format!("http://127.0.0.1:{port}"), None);
    assert!(matches!(c.fetch_curve("11.a2"), Err(ClientError::Network { attempts: 4, .. })));
}

#[test]
fn unknown_label_is_not_found() {
    let server = MockServer::start(lmfdb_responder("11.a2"));
    let c = networked(&server.base_url, None);
    assert!(matches!(c.fetch_curve("15.a1"), Err(ClientError::NotFound(_))));
    assert!(matches!(c.fetch_curve("zzz999"), Err(ClientError::NotFound(_))));
    assert_eq!(server.hits(), 1);
}

#[test]
fn malformed_responses_are_protocol_errors() {
    let server = MockServer::start(|_, _| (200, "not json".into()));
    let c = networked(&server.base_url, None);
    assert!(matches!(c.fetch_curve("11.a2"), Err(ClientError::Protocol(_))));

    let server = MockServer::start(|path, _| {
        let body = if path.starts_with("/ec_curvedata/") {
            json!({"data": [{"lmfdb_iso": "11.a", "conductor": 11, "rank": 0}]})
        } else {
            json!({"data": [{"aplist": [-2, -1, 9]}]})
        };
        (200, body.to_string())
    });
    let c = networked(&server.base_url, None);
    let err = c.fetch_curve("11.a2").unwrap_err();
    assert!(matches!(err, ClientError::Protocol(ref m) if m.contains("Hasse")), "{err}");
}

#[test]
fn offline_fetches_are_byte_identical() {
    let c = Client::new(ClientConfig {
        offline: true,
        ..ClientConfig::default()
    });
    let a = serde_json::to_vec(&c.fetch_curve("389.a1").unwrap()).unwrap();
    let b = serde_json::to_vec(&c.fetch_curve("389.a1").unwrap()).unwrap();
    assert_eq!(a, b);

    let empty = tempfile::tempdir().unwrap();
    let c = Client::new(ClientConfig {
        offline: true,
        cache_dir: Some(empty.path().into()),
        fixture_dir: None,
        ..ClientConfig::default()
    });
    assert!(matches!(c.fetch_curve("11.a2"), Err(ClientError::OfflineMiss(_))));
}

#[test]
fn base_url_from_environment() {
    std::env::set_var(BASE_URL_ENV, "http://127.0.0.1:9/api");
    assert_eq!(ClientConfig::default().base_url, "http://127.0.0.1:9/api");
    std::env::remove_var(BASE_URL_ENV);
    assert_eq!(ClientConfig::default().base_url, iwasawa_mw::lmfdb::DEFAULT_BASE_URL);
}
