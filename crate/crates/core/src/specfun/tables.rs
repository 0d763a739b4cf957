//! Bernoulli-number coefficient tables.

/// `B_{2j} / (2j)!` for `j = 1..=60`.
pub(crate) const BERNOULLI_OVER_FACTORIAL: [f64; 60] = [
    8.3333333333333333e-2,
    -1.3888888888888889e-3,
    3.3068783068783069e-5,
    -8.2671957671957672e-7,
    2.0876756987868099e-8,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225829e-13,
    8.5860620562778446e-15,
    -2.1748686985580619e-16,
    5.5090028283602295e-18,
    -1.3954464685812523e-19,
    3.5347070396294675e-21,
    -8.9535174270375469e-23,
    2.2679524523376831e-24,
    -5.7447906688722024e-26,
    1.4551724756148649e-27,
    -3.6859949406653102e-29,
    9.3367342570950447e-31,
    -2.3650224157006299e-32,
    5.9906717624821343e-34,
    -1.5174548844682903e-35,
    3.8437581254541882e-37,
    -9.736353072646691e-39,
    2.466247044200681e-40,
    -6.2470767418207437e-42,
    1.5824030244644914e-43,
    -4.008273685948936e-45,
    1.0153075855569556e-46,
    -2.5718041582418717e-48,
    6.5144560352338149e-50,
    -1.6501309906896525e-51,
    4.1798306285394759e-53,
    -1.0587634667702909e-54,
    2.6818791912607707e-56,
    -6.7932793511074212e-58,
    1.7207577616681405e-59,
    -4.3587303293488938e-61,
    1.1040792903684667e-62,
    -2.7966655133781345e-64,
    7.0840365016794702e-66,
    -1.7944074082892241e-67,
    4.5452870636110961e-69,
    -1.1513346631982052e-70,
    2.9163647710923614e-72,
    -7.3872382634973376e-74,
    1.8712093117637953e-75,
    -4.7398285577617994e-77,
    1.2006125993354507e-78,
    -3.0411872415142924e-80,
    7.7034172747051063e-82,
    -1.9512983909098831e-83,
    4.9426965651594615e-85,
    -1.2519996659171848e-86,
    3.1713522017635155e-88,
    -8.0331289707353345e-90,
    2.0348153391661466e-91,
    -5.1542474664474739e-93,
    1.3055861352149467e-94,
    -3.3070883141750912e-96,
];

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=10`, the Stirling series coefficients.
pub(crate) const STIRLING: [f64; 10] = [
    8.3333333333333333e-2,
    -2.7777777777777778e-3,
    7.9365079365079365e-4,
    -5.9523809523809524e-4,
    8.4175084175084175e-4,
    -1.9175269175269175e-3,
    6.4102564102564103e-3,
    -2.9550653594771242e-2,
    1.7964437236883057e-1,
    -1.3924322169059011,
];
