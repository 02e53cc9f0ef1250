//! Known matrices in `{0,1}` presentation.

use crate::matrix::BitMatrix;

const ORDER_15: [&str; 15] = [
    "111111110000000",
    "111100001111000",
    "111010001000111",
    "100101101100110",
    "010011011110100",
    "100010111011010",
    "110001100011101",
    "001100111010101",
    "100110010101101",
    "001011101101001",
    "010110100110011",
    "001111000011110",
    "011000110101110",
    "010101011001011",
    "101001010110011",
];

/// Group-list rows of [`order_15`] as `(label, count)` pairs.
pub const ORDER_15_GROUPS: [&[(u64, usize)]; 15] = [
    &[(0, 8), (1, 7)],
    &[(0, 4), (1, 4), (2, 4), (3, 3)],
    &[(0, 3), (1, 1), (2, 1), (3, 3), (4, 1), (5, 3), (6, 3)],
    &[
        (0, 1), (1, 2), (2, 1), (5, 1), (6, 2), (7, 1), (8, 1), (10, 1), (11, 2), (12, 2),
        (13, 1),
    ],
    &[
        (1, 1), (2, 1), (3, 1), (5, 1), (10, 1), (12, 1), (13, 1), (14, 1), (16, 1), (20, 1),
        (22, 1), (23, 1), (24, 1), (25, 1), (27, 1),
    ],
    &[
        (2, 1), (5, 1), (7, 1), (11, 1), (20, 1), (25, 1), (26, 1), (28, 1), (32, 1), (41, 1),
        (44, 1), (46, 1), (49, 1), (50, 1), (55, 1),
    ],
    &[
        (4, 1), (10, 1), (15, 1), (23, 1), (41, 1), (50, 1), (52, 1), (57, 1), (65, 1), (83, 1),
        (88, 1), (92, 1), (98, 1), (101, 1), (110, 1),
    ],
    &[
        (9, 1), (21, 1), (30, 1), (46, 1), (83, 1), (101, 1), (104, 1), (114, 1), (130, 1),
        (167, 1), (176, 1), (185, 1), (196, 1), (203, 1), (220, 1),
    ],
    &[
        (18, 1), (43, 1), (61, 1), (92, 1), (166, 1), (203, 1), (209, 1), (228, 1), (261, 1),
        (334, 1), (353, 1), (370, 1), (392, 1), (407, 1), (440, 1),
    ],
    &[
        (37, 1), (87, 1), (122, 1), (185, 1), (332, 1), (406, 1), (418, 1), (457, 1), (522, 1),
        (668, 1), (707, 1), (740, 1), (785, 1), (815, 1), (880, 1),
    ],
    &[
        (75, 1), (174, 1), (245, 1), (370, 1), (664, 1), (813, 1), (836, 1), (915, 1),
        (1045, 1), (1336, 1), (1414, 1), (1481, 1), (1571, 1), (1630, 1), (1760, 1),
    ],
    &[
        (151, 1), (349, 1), (490, 1), (740, 1), (1328, 1), (1626, 1), (1673, 1), (1831, 1),
        (2091, 1), (2673, 1), (2828, 1), (2962, 1), (3142, 1), (3260, 1), (3521, 1),
    ],
    &[
        (303, 1), (698, 1), (980, 1), (1481, 1), (2657, 1), (3253, 1), (3346, 1), (3662, 1),
        (4183, 1), (5346, 1), (5657, 1), (5924, 1), (6284, 1), (6520, 1), (7043, 1),
    ],
    &[
        (607, 1), (1396, 1), (1961, 1), (2962, 1), (5315, 1), (6506, 1), (6693, 1), (7324, 1),
        (8366, 1), (10693, 1), (11315, 1), (11848, 1), (12569, 1), (13040, 1), (14086, 1),
    ],
    &[
        (1214, 1), (2793, 1), (3922, 1), (5925, 1), (10631, 1), (13012, 1), (13387, 1),
        (14648, 1), (16733, 1), (21386, 1), (22630, 1), (23697, 1), (25139, 1), (26080, 1),
        (28172, 1),
    ],
];

fn parse(rows: &[&str]) -> BitMatrix {
    let rows: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| r.bytes().map(|c| c - b'0').collect())
        .collect();
    BitMatrix::from_rows(&rows).expect("sample matrices are well formed")
}

/// The unique `3 x 3` matrix with the standard first two rows.
pub fn order_3() -> BitMatrix {
    parse(&["110", "101", "011"])
}

/// A `15 x 15` matrix whose rows are already in canonical ones-first layout.
pub fn order_15() -> BitMatrix {
    parse(&ORDER_15)
}
