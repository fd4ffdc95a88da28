//! Reference `(n, k, N)` rows used by `table1 --verify`.

use simplex_ball::TableRow;

pub const REFERENCE: &[(usize, usize, &str)] = &[
    (1, 1, "2"),
    (2, 1, "3"),
    (3, 1, "4"),
    (4, 1, "5"),
    (5, 2, "15"),
    (6, 2, "21"),
    (7, 3, "56"),
    (8, 3, "84"),
    (9, 3, "120"),
    (10, 4, "330"),
    (11, 4, "495"),
    (12, 5, "1287"),
    (13, 5, "2002"),
    (14, 6, "5005"),
    (15, 6, "8008"),
    (50, 22, "196793068630200"),
    (100, 45, "110826707011209895344085355160"),
];

/// Mismatches between computed rows (indexed from n = 1) and the reference
/// rows that fall inside the computed range.
pub fn mismatches(rows: &[TableRow]) -> Vec<String> {
    REFERENCE
        .iter()
        .filter_map(|&(n, k, count)| {
            let row = rows.get(n - 1)?;
            let computed = row.count.to_string();
            (row.k != k || computed != count).then(|| {
                format!(
                    "n = {n}: computed k = {}, N = {computed}; reference k = {k}, N = {count}",
                    row.k
                )
            })
        })
        .collect()
}
