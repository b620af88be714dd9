/// Seven-point degree-5 triangle rule in barycentric coordinates. Weights
/// sum to one; integrals are `area * sum_q w_q f(x_q)`. Degree 5 is exact
/// for every term of the Taylor-Hood Jacobian on straight triangles.
pub const TRI_QUADRATURE: [([f64; 3], f64); 7] = {
    const A: f64 = 0.059_715_871_789_770;
    const B: f64 = 0.470_142_064_105_115;
    const WA: f64 = 0.132_394_152_788_506;
    const C: f64 = 0.797_426_985_353_087;
    const D: f64 = 0.101_286_507_323_456;
    const WC: f64 = 0.125_939_180_544_827;
    [
        ([1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], 0.225),
        ([A, B, B], WA),
        ([B, A, B], WA),
        ([B, B, A], WA),
        ([C, D, D], WC),
        ([D, C, D], WC),
        ([D, D, C], WC),
    ]
};

/// Three-point Gauss rule on [0,1] (degree 5), for boundary edge terms.
pub const EDGE_QUADRATURE: [(f64, f64); 3] = [
    (0.112701665379258, 5.0 / 18.0),
    (0.5, 4.0 / 9.0),
    (0.887298334620742, 5.0 / 18.0),
];
