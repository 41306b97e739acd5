//! A minimal HTTP server standing in for the LMFDB API.

#![allow(dead_code)]

use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;

use serde_json::{json, Value};

pub struct MockServer {
    pub base_url: String,
    hits: Arc<AtomicUsize>,
    paths: Arc<Mutex<Vec<String>>>,
}

impl MockServer {
    /// Serves `respond(path) -> (status, body)` on a local port until the
    /// test process exits.
    pub fn start<F>(respond: F) -> Self
    where
        F: Fn(&str, usize) -> (u16, String) + Send + 'static,
    {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let base_url = format!("http://{}", listener.local_addr().unwrap());
        let hits = Arc::new(AtomicUsize::new(0));
        let paths = Arc::new(Mutex::new(Vec::new()));
        let (h, ps) = (hits.clone(), paths.clone());
        thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(mut stream) = stream else { continue };
                let mut reader = BufReader::new(stream.try_clone().unwrap());
                let mut request_line = String::new();
                if reader.read_line(&mut request_line).is_err() {
                    continue;
                }
                let mut line = String::new();
                while reader.read_line(&mut line).map(|n| n > 2).unwrap_or(false) {
                    line.clear();
                }
                let path = request_line.split_whitespace().nth(1).unwrap_or("").to_string();
                let n = h.fetch_add(1, Ordering::SeqCst);
                ps.lock().unwrap().push(path.clone());
                let (status, body) = respond(&path, n);
                let _ = write!(
                    stream,
                    "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                    body.len()
                );
            }
        });
        Self { base_url, hits, paths }
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::SeqCst)
    }

    pub fn paths(&self) -> Vec<String> {
        self.paths.lock().unwrap().clone()
    }
}

/// Records of a bundled fixture, for replay by the mock server.
pub fn fixture_records(label: &str) -> (Value, Value) {
    let path = iwasawa_mw::lmfdb::bundled_fixture_dir().join(format!("{label}.json"));
    let doc: Value = serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap();
    (doc["curvedata"].clone(), doc["classdata"].clone())
}

/// Answers curve and class queries from the given fixture, with empty
/// results for anything else.
pub fn lmfdb_responder(label: &'static str) -> impl Fn(&str, usize) -> (u16, String) + Send + 'static {
    let (curve, class) = fixture_records(label);
    move |path, _| {
        let data = if path.starts_with("/ec_curvedata/") && path.contains(&format!("={label}&")) {
            vec![curve.clone()]
        } else if path.starts_with("/ec_classdata/") {
            vec![class.clone()]
        } else {
            vec![]
        };
        (200, json!({ "data": data }).to_string())
    }
}
