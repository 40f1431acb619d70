//! Proleptic Gregorian calendar dates at day granularity.

use core::fmt;
use core::str::FromStr;

/// A validated calendar date.
///
/// Ordering is chronological. Dumps publish dates at varying granularity, so
/// parsing accepts `YYYY-MM-DD`, `YYYY-MM` and `YYYY`; missing parts default
/// to `01`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Date {
    year: u16,
    month: u8,
    day: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DateError {
    kind: DateErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum DateErrorKind {
    Syntax,
    Month,
    Day,
}

impl fmt::Display for DateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DateErrorKind::Syntax => f.write_str("expected YYYY, YYYY-MM or YYYY-MM-DD"),
            DateErrorKind::Month => f.write_str("month out of range"),
            DateErrorKind::Day => f.write_str("day out of range for month"),
        }
    }
}

pub fn is_leap_year(year: u16) -> bool {
    (year.is_multiple_of(4) && !year.is_multiple_of(100)) || year.is_multiple_of(400)
}

pub fn days_in_month(year: u16, month: u8) -> u8 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap_year(year) => 29,
        2 => 28,
        _ => 0,
    }
}

impl Date {
    pub fn new(year: u16, month: u8, day: u8) -> Result<Self, DateError> {
        if year > 9999 {
            return Err(DateError { kind: DateErrorKind::Syntax });
        }
        if !(1..=12).contains(&month) {
            return Err(DateError { kind: DateErrorKind::Month });
        }
        if day == 0 || day > days_in_month(year, month) {
            return Err(DateError { kind: DateErrorKind::Day });
        }
        Ok(Date { year, month, day })
    }

    pub fn year(&self) -> u16 {
        self.year
    }

    pub fn month(&self) -> u8 {
        self.month
    }

    pub fn day(&self) -> u8 {
        self.day
    }
}

fn digits(s: &str, len: usize) -> Option<u16> {
    if s.len() != len || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Date {
    type Err = DateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let syntax = DateError { kind: DateErrorKind::Syntax };
        let mut parts = s.split('-');
        let year = parts.next().and_then(|p| digits(p, 4)).ok_or_else(|| syntax.clone())?;
        let month = match parts.next() {
            Some(p) => digits(p, 2).ok_or_else(|| syntax.clone())? as u8,
            None => 1,
        };
        let day = match parts.next() {
            Some(p) => digits(p, 2).ok_or_else(|| syntax.clone())? as u8,
            None => 1,
        };
        if parts.next().is_some() {
            return Err(syntax);
        }
        Date::new(year, month, day)
    }
}

impl fmt::Display for Date {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Date {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Date {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <alloc::borrow::Cow<'de, str>>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
