//! Plain-text result tables: per-kind AP, relative performance, clouds.

use aerobust_core::eval::RobustnessReport;
use aerobust_core::Category;

use crate::common::{fmt2, render_table};

/// Severity-averaged AP per kind, grouped by category, then mPC.
pub fn corruption_table(rows: &[(&str, &RobustnessReport)]) -> String {
    let mut headers = vec!["Model".to_string(), "Clean".to_string()];
    for cat in Category::ALL {
        for k in cat.kinds() {
            headers.push(k.abbreviation().to_string());
        }
    }
    headers.push("mPC".into());
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|(name, r)| {
            let mut row = vec![name.to_string(), fmt2(r.AP_clean)];
            for cat in Category::ALL {
                row.extend(cat.kinds().map(|k| fmt2(r.per_kind[k.name()])));
            }
            row.push(fmt2(r.mPC));
            row
        })
        .collect();
    render_table(&headers, &body)
}

/// rPC and the four category rPCs.
pub fn relative_table(rows: &[(&str, &RobustnessReport)]) -> String {
    let headers: Vec<String> =
        ["Model", "rPC", "rPC_noise", "rPC_blur", "rPC_weather", "rPC_digital"].map(String::from).to_vec();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|(name, r)| {
            vec![
                name.to_string(),
                fmt2(r.rPC),
                fmt2(r.rPC_noise),
                fmt2(r.rPC_blur),
                fmt2(r.rPC_weather),
                fmt2(r.rPC_digital),
            ]
        })
        .collect();
    render_table(&headers, &body)
}

/// Clean vs cloudy AP; rows without a cloud score are skipped.
pub fn cloud_table(rows: &[(&str, &RobustnessReport)]) -> Option<String> {
    let headers: Vec<String> = ["Model", "Clean", "Clouds", "rPC_clouds"].map(String::from).to_vec();
    let body: Vec<Vec<String>> = rows
        .iter()
        .filter_map(|(name, r)| {
            Some(vec![name.to_string(), fmt2(r.AP_clean), fmt2(r.AP_clouds?), fmt2(r.rPC_clouds?)])
        })
        .collect();
    (!body.is_empty()).then(|| render_table(&headers, &body))
}

pub fn all_tables(rows: &[(&str, &RobustnessReport)]) -> String {
    let mut s = String::from("AP50 under corruption (mean over severities)\n");
    s.push_str(&corruption_table(rows));
    s.push_str("\nRelative performance under corruption (%)\n");
    s.push_str(&relative_table(rows));
    if let Some(t) = cloud_table(rows) {
        s.push_str("\nReal clouds\n");
        s.push_str(&t);
    }
    s
}

