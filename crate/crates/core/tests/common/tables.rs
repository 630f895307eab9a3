//! Published values of N_n used as reproduction targets.

/// N_n for q=2, Type I, ell=t=2, n = 1..=20. Columns: <1>, xi2, xi1^2, xi1^2 xi2 with
/// xi1 = <x+1>, xi2 = <x^4+x+1>.
pub const Q2_I_2_2: [[u64; 4]; 20] = [
    [0, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 3],
    [1, 4, 2, 0],
    [5, 0, 5, 5],
    [9, 6, 4, 12],
    [21, 14, 7, 21],
    [31, 24, 40, 32],
    [63, 72, 63, 57],
    [125, 130, 116, 140],
    [253, 242, 275, 253],
    [523, 532, 512, 480],
    [923, 1092, 1079, 1001],
    [2065, 2030, 2052, 2044],
    [4145, 4110, 4115, 4013],
    [8143, 8112, 8128, 8384],
    [16303, 16592, 16439, 16201],
    [33093, 32442, 32692, 32844],
    [65493, 65322, 65379, 65949],
    [131731, 130924, 130112, 131520],
];

/// N_n for q=3, Type I, ell=2, t=1, n = 1..=20, indexed [a][n-1][j] for the class
/// xi1^a xi2^j with xi1 = <x+1> (order 3), xi2 = <x+2> (order 6).
pub const Q3_I_2_1: [[[u64; 6]; 20]; 3] = [
    [
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [1, 0, 0, 1, 3, 3],
        [0, 4, 8, 8, 5, 4],
        [10, 15, 15, 10, 15, 6],
        [58, 36, 45, 40, 45, 36],
        [112, 99, 126, 112, 126, 126],
        [328, 360, 369, 400, 396, 360],
        [1093, 1134, 1134, 1093, 1053, 1053],
        [3280, 3240, 3240, 3280, 3321, 3240],
        [9922, 9801, 9801, 9922, 9801, 10044],
        [28714, 29484, 29565, 29848, 29565, 29484],
        [88816, 89181, 88452, 88816, 88452, 88452],
        [265720, 265356, 266085, 265720, 265356, 265356],
        [797161, 796068, 796068, 797161, 798255, 798255],
        [2388568, 2391120, 2394036, 2394400, 2391849, 2391120],
        [7172266, 7175547, 7175547, 7172266, 7175547, 7168986],
        [21536482, 21520080, 21526641, 21523360, 21526641, 21520080],
        [64563520, 64553679, 64573362, 64563520, 64573362, 64573362],
        [193684000, 193706964, 193713525, 193736488, 193733208, 193706964],
    ],
    [
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 2],
        [0, 3, 0, 3, 3, 3],
        [5, 4, 2, 4, 2, 4],
        [15, 15, 15, 15, 15, 15],
        [45, 36, 27, 36, 36, 54],
        [99, 126, 126, 126, 126, 126],
        [396, 360, 341, 360, 396, 360],
        [1134, 1053, 1134, 1053, 1053, 1053],
        [3321, 3240, 3240, 3240, 3402, 3402],
        [9801, 9801, 9801, 9801, 9801, 9801],
        [29565, 29484, 29565, 29484, 29808, 29484],
        [89181, 88452, 88452, 88452, 88452, 88452],
        [265356, 265356, 265356, 265356, 265356, 266814],
        [796068, 798255, 796068, 798255, 798255, 798255],
        [2391849, 2391120, 2389662, 2391120, 2389662, 2391120],
        [7175547, 7175547, 7175547, 7175547, 7175547, 7175547],
        [21526641, 21520080, 21513519, 21520080, 21520080, 21533202],
        [64553679, 64573362, 64573362, 64573362, 64573362, 64573362],
        [193733208, 193706964, 193693842, 193706964, 193733208, 193706964],
    ],
    [
        [0, 0, 0, 0, 0, 0],
        [1, 2, 2, 0, 0, 0],
        [3, 0, 0, 0, 3, 0],
        [8, 4, 8, 4, 2, 4],
        [6, 15, 15, 15, 15, 15],
        [45, 54, 36, 36, 27, 36],
        [126, 126, 126, 126, 126, 126],
        [369, 360, 342, 360, 342, 360],
        [1053, 1134, 1134, 1134, 1053, 1134],
        [3240, 3402, 3240, 3240, 3240, 3240],
        [10044, 9801, 9801, 9801, 9801, 9801],
        [29565, 29484, 29808, 29484, 29565, 29484],
        [88452, 88452, 88452, 88452, 88452, 88452],
        [266085, 266814, 266814, 265356, 265356, 265356],
        [798255, 796068, 796068, 796068, 798255, 796068],
        [2394036, 2391120, 2394036, 2391120, 2389662, 2391120],
        [7168986, 7175547, 7175547, 7175547, 7175547, 7175547],
        [21526641, 21533202, 21520080, 21520080, 21513519, 21520080],
        [64573362, 64573362, 64573362, 64573362, 64573362, 64573362],
        [193713525, 193706964, 193693842, 193706964, 193693842, 193706964],
    ],
];
