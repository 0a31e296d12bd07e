"""Published reference values for the three manufactured examples.

TABLE1 is keyed by derivative order; rows are (1/tau, abs_error, order).
TABLE2 / TABLE3 are keyed by (alpha1, alpha2); rows are
(N, M, error, tco, sco) on the ladder tau = 1/(5 m^2), h = 1/(5 m).
"""

TABLE1 = {
    0.1: [(20, 9.887230e-03, None), (40, 3.031228e-03, 1.7057), (80, 8.357173e-04, 1.8588),
          (160, 2.184140e-04, 1.9359), (320, 5.576440e-05, 1.9696)],
    0.3: [(20, 8.294679e-03, None), (40, 2.177047e-03, 1.9298), (80, 5.554318e-04, 1.9707),
          (160, 1.401845e-04, 1.9863), (320, 3.520843e-05, 1.9933)],
    0.5: [(20, 7.611138e-03, None), (40, 1.903986e-03, 1.9991), (80, 4.759995e-04, 2.0000),
          (160, 1.190001e-04, 2.0000), (320, 2.975004e-05, 2.0000)],
    0.7: [(20, 5.717212e-03, None), (40, 1.389258e-03, 2.0410), (80, 3.429045e-04, 2.0184),
          (160, 8.520286e-05, 2.0088), (320, 2.123685e-05, 2.0043)],
    0.9: [(20, 2.151549e-03, None), (40, 5.116059e-04, 2.0723), (80, 1.249915e-04, 2.0332),
          (160, 3.090217e-05, 2.0160), (320, 7.683366e-06, 2.0079)],
}

_LADDER = [(5, 5), (20, 10), (45, 15), (80, 20), (125, 25)]


def _rows(values):
    return [(n, m, e, tco, sco) for (n, m), (e, tco, sco) in zip(_LADDER, values)]


TABLE2 = {
    (0.2, 0.8): _rows([(4.017482e-02, None, None), (3.443878e-03, 1.7721, 3.5442),
                       (7.010198e-04, 1.9630, 3.9259), (2.254316e-04, 1.9718, 3.9437),
                       (9.258968e-05, 1.9939, 3.9877)]),
    (0.4, 0.6): _rows([(3.636258e-02, None, None), (2.709682e-03, 1.8731, 3.7463),
                       (5.399822e-04, 1.9891, 3.9783), (1.725672e-04, 1.9827, 3.9653),
                       (7.068420e-05, 2.0000, 4.0000)]),
    (0.5, 0.5): _rows([(3.552136e-02, None, None), (2.583580e-03, 1.8906, 3.7812),
                       (5.125456e-04, 1.9947, 3.9893), (1.635583e-04, 1.9852, 3.9704),
                       (6.694813e-05, 2.0015, 4.0030)]),
    (0.6, 0.4): _rows([(3.463007e-02, None, None), (2.513471e-03, 1.8921, 3.7843),
                       (4.969394e-04, 1.9989, 3.9978), (1.583867e-04, 1.9873, 3.9746),
                       (6.479215e-05, 2.0029, 4.0057)]),
    (0.8, 0.2): _rows([(4.961263e-02, None, None), (2.863711e-03, 2.0574, 4.2960),
                       (5.157444e-04, 2.1139, 4.0857), (1.542104e-04, 2.0983, 4.0304),
                       (6.299963e-05, 2.0059, 4.0127)]),
}

# The final (0.2, 0.8) error is printed as 2.254541e-04, a repeat of the row
# above it; the printed order 1.9983 on the 80 -> 125 step implies ~9.24e-05.
TABLE3 = {
    (0.2, 0.8): _rows([(3.822113e-02, None, None), (3.444335e-03, 1.7360, 3.4721),
                       (6.972544e-04, 1.9698, 3.9395), (2.254541e-04, 1.9623, 3.9246),
                       (2.254541e-04, 1.9983, 3.9966)]),
    (0.4, 0.6): _rows([(3.460010e-02, None, None), (2.710859e-03, 1.8370, 3.6740),
                       (5.372495e-04, 1.9959, 3.9919), (1.726387e-04, 1.9731, 3.9462),
                       (7.057381e-05, 2.0044, 4.0088)]),
    (0.5, 0.5): _rows([(3.379936e-02, None, None), (2.584901e-03, 1.8544, 3.7088),
                       (5.099957e-04, 2.0015, 4.0029), (1.636407e-04, 1.9757, 3.9513),
                       (6.684963e-05, 2.0059, 4.0119)]),
    (0.6, 0.4): _rows([(3.295086e-02, None, None), (2.514903e-03, 1.8559, 3.7117),
                       (4.945015e-04, 2.0056, 4.0113), (1.584782e-04, 1.9778, 3.9555),
                       (6.470169e-05, 2.0073, 4.0146)]),
    (0.8, 0.2): _rows([(4.721574e-02, None, None), (2.866291e-03, 2.0210, 4.0420),
                       (5.133508e-04, 2.1208, 4.2416), (1.543393e-04, 2.0888, 4.1775),
                       (6.292841e-05, 2.0103, 4.0205)]),
}

PAIRS = tuple(TABLE2)


def implied_final_error(table: dict, pair) -> float:
    """Finest-level error reconstructed from the previous row and the final order."""
    rows = table[pair]
    (n0, _, e0, _, _), (n1, _, _, tco, _) = rows[-2], rows[-1]
    return e0 * (n0 / n1) ** tco
