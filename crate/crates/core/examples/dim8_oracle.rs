//! Prints the fingerprints of the 14 dimension-8 entries as JSON. The
//! acceptance suite compares against the frozen copy in tests/data.

use frobenius::catalog::dim8_table;
use frobenius::lie::fingerprint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = serde_json::Map::new();
    for row in dim8_table()? {
        let fp = fingerprint(&row.entry.algebra, None)?;
        out.insert(row.label, serde_json::to_value(fp)?);
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}
