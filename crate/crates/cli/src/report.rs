use std::fmt::Write as _;
use std::time::Instant;

use finring::analysis::{self, Budget};
use finring::ring::EAGER_MAX;
use finring::{Ring, RingError};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Timings {
    pub units_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radical_ms: Option<f64>,
}

/// Machine-readable summary of one ring.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub ring: String,
    pub order: usize,
    pub characteristic: u64,
    pub commutative: bool,
    pub boolean: bool,
    pub unit_count: usize,
    pub unit_sum: String,
    pub unit_sum_index: usize,
    pub units_trivial: bool,
    pub is_division_ring: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radical: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semisimple: Option<bool>,
    pub timings: Timings,
}

#[derive(Debug, Serialize)]
pub struct UnitSumDocument {
    pub ring: String,
    pub unit_count: usize,
    pub unit_sum: String,
    pub unit_sum_index: usize,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn build(expr: &str, r: &Ring, budget: &Budget, with_radical: bool) -> Result<ReportDocument, RingError> {
    let t = Instant::now();
    let (unit_count, sum) = analysis::unit_count_and_sum(r, budget)?;
    let units_ms = ms(t);
    let (radical, semisimple, radical_ms) = if with_radical && r.order() <= EAGER_MAX {
        let t = Instant::now();
        let j = analysis::jacobson_radical(r)?;
        let members = j.members.iter().map(|e| r.pretty_idx(e.index())).collect();
        (Some(members), Some(j.is_zero), Some(ms(t)))
    } else {
        (None, None, None)
    };
    Ok(ReportDocument {
        ring: expr.to_string(),
        order: r.order(),
        characteristic: analysis::characteristic(r),
        commutative: analysis::is_commutative(r),
        boolean: analysis::is_boolean(r),
        unit_count,
        unit_sum: r.pretty_idx(sum),
        unit_sum_index: sum,
        units_trivial: unit_count == 1,
        is_division_ring: r.order() > 1 && unit_count == r.order() - 1,
        radical,
        semisimple,
        timings: Timings { units_ms, radical_ms },
    })
}

pub fn unit_sum(expr: &str, r: &Ring, budget: &Budget) -> Result<UnitSumDocument, RingError> {
    let (unit_count, sum) = analysis::unit_count_and_sum(r, budget)?;
    Ok(UnitSumDocument {
        ring: expr.to_string(),
        unit_count,
        unit_sum: r.pretty_idx(sum),
        unit_sum_index: sum,
    })
}

impl ReportDocument {
    pub fn to_text(&self) -> String {
        let mut rows: Vec<(&str, String)> = vec![
            ("ring", self.ring.clone()),
            ("order", self.order.to_string()),
            ("characteristic", self.characteristic.to_string()),
            ("commutative", self.commutative.to_string()),
            ("boolean", self.boolean.to_string()),
            ("unit_count", self.unit_count.to_string()),
            ("unit_sum", format!("{} (index {})", self.unit_sum, self.unit_sum_index)),
            ("units_trivial", self.units_trivial.to_string()),
            ("is_division_ring", self.is_division_ring.to_string()),
        ];
        if let (Some(rad), Some(ss)) = (&self.radical, self.semisimple) {
            rows.push(("radical", format!("{{{}}}", rad.join(", "))));
            rows.push(("semisimple", ss.to_string()));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut s = String::new();
        for (k, v) in rows {
            writeln!(s, "{k:<width$}  {v}").unwrap();
        }
        s
    }
}
