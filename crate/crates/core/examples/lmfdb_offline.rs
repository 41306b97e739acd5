//! Curve data from the bundled fixtures, with a throwaway cache directory.

use iwasawa_mw::lmfdb::{classify_curve, Client, ClientConfig};

fn main() {
    let cache = std::env::temp_dir().join("iwmw-example-cache");
    let client = Client::new(ClientConfig {
        offline: true,
        cache_dir: Some(cache),
        ..ClientConfig::default()
    });
    for (label, p) in [("11.a2", 3), ("34a1", 5), ("26b1", 7), ("37.a1", 5)] {
        let fetched = client.fetch_curve(label).unwrap();
        let k = classify_curve(&fetched, p).unwrap();
        println!(
            "{label}: rank {:?}, a_{p} = {}, {} at {p} (from {})",
            fetched.curve.rank, k.ap, k.reduction, k.provenance
        );
    }
    println!("zzz999: {}", client.fetch_curve("zzz999").unwrap_err());
    println!("15.a1: {}", client.fetch_curve("15.a1").unwrap_err());
}
