//! Counts refined by permutation statistics, with CSV/JSON export.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ClassError, ClassLab, Levels, PatternBasis};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stat {
    LeadingMaxima,
    Bond,
    LrMin,
}

impl Stat {
    pub const ALL: [Stat; 3] = [Stat::LeadingMaxima, Stat::Bond, Stat::LrMin];

    pub fn id(self) -> &'static str {
        match self {
            Stat::LeadingMaxima => "leading-maxima",
            Stat::Bond => "bond",
            Stat::LrMin => "lr-min",
        }
    }

    pub fn eval(self, p: &Permutation) -> usize {
        match self {
            Stat::LeadingMaxima => p.leading_maxima_count(),
            Stat::Bond => p.bond_count(),
            Stat::LrMin => p.lr_minima().len(),
        }
    }

    /// Parses a comma-separated list of statistic ids.
    pub fn parse_list(text: &str) -> Result<Vec<Stat>, ClassError> {
        text.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl FromStr for Stat {
    type Err = ClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stat::ALL
            .into_iter()
            .find(|st| st.id() == s)
            .ok_or_else(|| ClassError::UnknownStat(s.to_string()))
    }
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Element predicates. The negative ones hold vacuously for ∅.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Filter {
    #[default]
    None,
    /// π_n = n
    LastEntryEqualsLength,
    /// π₁ ≠ n
    FirstEntryNotMax,
    /// π_n ≠ n
    LastEntryNotLength,
    /// π₁ ≠ 1
    FirstEntryNotOne,
}

impl Filter {
    pub const ALL: [Filter; 5] = [
        Filter::None,
        Filter::LastEntryEqualsLength,
        Filter::FirstEntryNotMax,
        Filter::LastEntryNotLength,
        Filter::FirstEntryNotOne,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Filter::None => "none",
            Filter::LastEntryEqualsLength => "last-entry-equals-length",
            Filter::FirstEntryNotMax => "first-entry-not-max",
            Filter::LastEntryNotLength => "last-entry-not-length",
            Filter::FirstEntryNotOne => "first-entry-not-one",
        }
    }

    pub fn accepts(self, p: &Permutation) -> bool {
        let v = p.values();
        let n = v.len() as u16;
        match self {
            Filter::None => true,
            Filter::LastEntryEqualsLength => v.last() == Some(&n) && n > 0,
            Filter::FirstEntryNotMax => v.first().is_none_or(|&x| x != n),
            Filter::LastEntryNotLength => v.last().is_none_or(|&x| x != n),
            Filter::FirstEntryNotOne => v.first().is_none_or(|&x| x != 1),
        }
    }
}

impl FromStr for Filter {
    type Err = ClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "last-is-max" => return Ok(Filter::LastEntryEqualsLength),
            "first-not-min" => return Ok(Filter::FirstEntryNotOne),
            _ => {}
        }
        Filter::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| ClassError::UnknownFilter(s.to_string()))
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = ClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            other => Err(ClassError::UnknownFormat(other.to_string())),
        }
    }
}

/// Counts keyed by (n, statistic values in declared order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedCountTable {
    pub basis: PatternBasis,
    pub max_length: usize,
    pub stats: Vec<Stat>,
    pub filter: Filter,
    counts: BTreeMap<(usize, Vec<usize>), u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct TableWire {
    basis: PatternBasis,
    max_length: usize,
    stat_names: Vec<String>,
    filter: String,
    records: Vec<RecordWire>,
}

#[derive(Serialize, Deserialize)]
struct RecordWire {
    n: usize,
    stats: Vec<usize>,
    count: u64,
}

impl RefinedCountTable {
    pub fn new(basis: PatternBasis, max_length: usize, stats: Vec<Stat>, filter: Filter) -> Self {
        RefinedCountTable {
            basis,
            max_length,
            stats,
            filter,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_levels(levels: &Levels, max_length: usize, stats: &[Stat], filter: Filter) -> Self {
        let mut table =
            RefinedCountTable::new(levels.basis().clone(), max_length, stats.to_vec(), filter);
        for n in 0..=max_length.min(levels.max_n()) {
            if stats.is_empty() {
                let c = levels.level(n).iter().filter(|p| filter.accepts(p)).count();
                table.counts.insert((n, Vec::new()), c as u64);
                continue;
            }
            for p in levels.level(n).iter().filter(|p| filter.accepts(p)) {
                let key = (n, stats.iter().map(|s| s.eval(p)).collect());
                *table.counts.entry(key).or_insert(0) += 1;
            }
        }
        table
    }

    pub fn add(&mut self, n: usize, stat_values: Vec<usize>, count: u64) {
        *self.counts.entry((n, stat_values)).or_insert(0) += count;
    }

    pub fn get(&self, n: usize, stat_values: &[usize]) -> u64 {
        self.counts
            .get(&(n, stat_values.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    /// Sum over all statistic values at length n.
    pub fn total(&self, n: usize) -> u64 {
        self.counts
            .range((n, Vec::new())..(n + 1, Vec::new()))
            .map(|(_, c)| c)
            .sum()
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..=self.max_length).map(|n| self.total(n)).collect()
    }

    pub fn records(&self) -> impl Iterator<Item = (usize, &[usize], u64)> {
        self.counts.iter().map(|((n, s), &c)| (*n, s.as_slice(), c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn header(&self) -> Vec<String> {
        std::iter::once("n".to_string())
            .chain(self.stats.iter().map(|s| s.id().to_string()))
            .chain(std::iter::once("count".to_string()))
            .collect()
    }

    pub fn to_csv(&self) -> Result<String, ClassError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| ClassError::Export(e.to_string());
        w.write_record(self.header()).map_err(err)?;
        for (n, s, c) in self.records() {
            let row: Vec<String> = std::iter::once(n.to_string())
                .chain(s.iter().map(|v| v.to_string()))
                .chain(std::iter::once(c.to_string()))
                .collect();
            w.write_record(&row).map_err(err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| ClassError::Export(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| ClassError::Export(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String, ClassError> {
        let wire = TableWire {
            basis: self.basis.clone(),
            max_length: self.max_length,
            stat_names: self.stats.iter().map(|s| s.id().to_string()).collect(),
            filter: self.filter.id().to_string(),
            records: self
                .records()
                .map(|(n, s, count)| RecordWire {
                    n,
                    stats: s.to_vec(),
                    count,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&wire).map_err(|e| ClassError::Export(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, ClassError> {
        let wire: TableWire =
            serde_json::from_str(text).map_err(|e| ClassError::Export(e.to_string()))?;
        let stats = wire
            .stat_names
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Stat>, _>>()?;
        let mut table =
            RefinedCountTable::new(wire.basis, wire.max_length, stats, wire.filter.parse()?);
        for r in wire.records {
            if r.stats.len() != table.stats.len() {
                return Err(ClassError::Export(format!(
                    "record at n = {} has wrong arity",
                    r.n
                )));
            }
            table.add(r.n, r.stats, r.count);
        }
        Ok(table)
    }

    pub fn export(&self, format: ExportFormat) -> Result<Vec<u8>, ClassError> {
        Ok(match format {
            ExportFormat::Csv => self.to_csv()?.into_bytes(),
            ExportFormat::Json => self.to_json()?.into_bytes(),
        })
    }
}

/// Refined counts of Av(basis) up to `max_n`, enumerating through the shared lab.
pub fn refined_count(
    basis: &PatternBasis,
    max_n: usize,
    stats: &[Stat],
    filter: Filter,
) -> Result<RefinedCountTable, ClassError> {
    let levels = ClassLab::shared().levels(basis, max_n)?;
    Ok(RefinedCountTable::from_levels(
        &levels, max_n, stats, filter,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(s: &str) -> PatternBasis {
        PatternBasis::parse(s).unwrap()
    }

    #[test]
    fn bonds_and_lr_minima_over_132() {
        let t = refined_count(
            &basis("132"),
            6,
            &[Stat::Bond, Stat::LrMin],
            "last-is-max".parse().unwrap(),
        )
        .unwrap();
        assert_eq!(t.get(2, &[1, 1]), 1);
        assert_eq!(t.total(2), 1);
        // appending a final maximum never creates a 132
        let plain = refined_count(&basis("132"), 6, &[], Filter::None).unwrap();
        for n in 1..=6 {
            assert_eq!(t.total(n), plain.total(n - 1));
        }
    }

    #[test]
    fn leading_maxima_rows_sum_to_counts() {
        let b = basis("2143,3142,4132");
        let t = refined_count(&b, 8, &[Stat::LeadingMaxima], Filter::None).unwrap();
        assert_eq!(t.get(3, &[3]), 1);
        assert_eq!(t.totals(), vec![1, 1, 2, 6, 21, 79, 311, 1265, 5275]);
        for (n, s, _) in t.records() {
            assert!(s[0] <= n);
        }
    }

    #[test]
    fn csv_export() {
        let t = refined_count(&basis("2413,3142"), 4, &[], Filter::None).unwrap();
        assert_eq!(t.to_csv().unwrap(), "n,count\n0,1\n1,1\n2,2\n3,6\n4,22\n");
        let empty = RefinedCountTable::new(basis("12"), 3, vec![Stat::Bond], Filter::None);
        assert_eq!(empty.to_csv().unwrap(), "n,bond,count\n");
    }

    #[test]
    fn json_round_trip() {
        let t = refined_count(
            &basis("2143,3142"),
            5,
            &[Stat::LeadingMaxima, Stat::LrMin],
            Filter::FirstEntryNotOne,
        )
        .unwrap();
        let back = RefinedCountTable::from_json(&t.to_json().unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn registry_errors() {
        assert_eq!(
            "height".parse::<Stat>(),
            Err(ClassError::UnknownStat("height".into()))
        );
        assert!(matches!(
            "odd".parse::<Filter>(),
            Err(ClassError::UnknownFilter(_))
        ));
        assert!(matches!(
            "xml".parse::<ExportFormat>(),
            Err(ClassError::UnknownFormat(_))
        ));
    }

    #[test]
    fn filters_on_empty() {
        let e = Permutation::empty();
        assert!(!Filter::LastEntryEqualsLength.accepts(&e));
        assert!(Filter::FirstEntryNotMax.accepts(&e));
        assert!(Filter::LastEntryNotLength.accepts(&e));
        assert!(Filter::FirstEntryNotOne.accepts(&e));
    }
}
