//! CSV flattening of verification reports: one row per (instance, property).

use rtglab_core::verify::VerificationReport;

use crate::Failure;

pub const COLUMNS: [&str; 7] = ["suite", "max_order", "index", "instance", "property", "status", "detail"];

pub fn to_csv(reports: &[VerificationReport]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure(format!("csv: {e}"));
    w.write_record(COLUMNS).map_err(csv_err)?;
    for rep in reports {
        for inst in &rep.instances {
            for r in &inst.records {
                let row = [
                    rep.suite.name(),
                    &rep.max_order.to_string(),
                    &inst.index.to_string(),
                    &inst.instance,
                    &r.id,
                    r.status.name(),
                    r.detail.as_deref().unwrap_or(""),
                ];
                w.write_record(row).map_err(csv_err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Failure(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields is UTF-8"))
}
