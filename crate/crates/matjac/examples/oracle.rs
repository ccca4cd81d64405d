//! Dumps exhaustive-scan zero counts for the built-in corpus as JSON.
//!
//! The output is committed at crates/matjac/tests/fixtures/oracle_counts.json
//! and pins the counts that the faster eliminative kernel must reproduce.
//! Regenerate with:
//!
//!   cargo run -p matjac --example oracle > crates/matjac/tests/fixtures/oracle_counts.json

use matjac::corpus;
use matjac::count::{count_affine_naive, count_torus_naive};
use matjac::psi::psi_from_bases;
use matjac::NAIVE_BUDGET;
use serde_json::{json, Value};

fn main() {
    let mut entries = Vec::new();
    for id in corpus::ids() {
        let m = corpus::corpus_matroid(id).expect("corpus id");
        let psi = psi_from_bases(&m);
        for p in [2u64, 3, 5, 7] {
            if (p as u128).pow(psi.var_count() as u32) > NAIVE_BUDGET {
                continue;
            }
            let affine = count_affine_naive(&psi, p).expect("within budget");
            let torus = count_torus_naive(&psi, p).expect("within budget");
            entries.push(json!({
                "id": id,
                "p": p,
                "n_vars": psi.var_count(),
                "affine": affine.to_string(),
                "torus": torus.to_string(),
            }));
        }
    }
    let doc: Value = json!({
        "generated_by":
            "cargo run -p matjac --example oracle > crates/matjac/tests/fixtures/oracle_counts.json",
        "method": "count_affine_naive / count_torus_naive exhaustive scans over (F_p)^E",
        "entries": entries,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
}
