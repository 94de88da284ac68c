//! Regenerates the JSON fixtures consumed by the CLI and the fixture tests:
//! the three parametric Weierstrass families at their documented witness
//! parameter, plus an order-30 period series for the operator-fit command.
//!
//! Run with `cargo run -p fanodegen --example gen_fixtures`.

use fanodegen::catalog::{self, fixtures_dir};
use fanodegen::rat;

fn main() {
    let dir = fixtures_dir();
    std::fs::create_dir_all(&dir).expect("create fixture directory");
    let write = |name: &str, value: serde_json::Value| {
        let path = dir.join(name);
        let text = format!("{}\n", serde_json::to_string_pretty(&value).unwrap());
        std::fs::write(&path, text).expect("write fixture");
        println!("wrote {}", path.display());
    };

    write(
        "case3.json",
        catalog::case3_model(&rat(1)).unwrap().to_json(),
    );
    write(
        "case14.json",
        catalog::case14_model(&rat(1)).unwrap().to_json(),
    );
    write(
        "case15.json",
        catalog::case15_model(&rat(1)).unwrap().to_json(),
    );

    let entry = catalog::row(17).unwrap();
    let series = entry.laurent().unwrap().phi_series(30);
    write("row17-series.json", series.to_json());
}
