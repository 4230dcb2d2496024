#pragma once

// Values computed by tests/fixtures/generate_fixtures.py (numpy, independent
// of the C++ library) from data/materials.json and the shipped layups.

namespace piezobeam::fixtures {

// PZT-5H after d -> e conversion
inline constexpr double kPztC11 = 128173887577.31657;
inline constexpr double kPztC12 = 80096964500.3935;
inline constexpr double kPztC13 = 84974507647.70572;
inline constexpr double kPztC33 = 119339198240.52786;
inline constexpr double kPztE31 = -11.413242693858502;
inline constexpr double kPztE33 = 23.186793961811468;
inline constexpr double kPztE15 = 17.03448275862069;
inline constexpr double kPztEpsS33Relative = 1272.8465363136604;

// PZT-5H condensed to the plane
inline constexpr double kPztQ11 = 67668478990.468506;
inline constexpr double kPztQ12 = 19591555913.54544;
inline constexpr double kPztE31Plane = -27.92321116928447;
inline constexpr double kPztEps33Plane = 1.5775058540297944e-08;

// Sandwich (data/layups/sandwich.json), capacitance per unit length in nF/mm
inline constexpr double kSandwichBlockedND = 2.0799706816096544;
inline constexpr double kSandwichBlockedNS = 3.5992252131065583;
inline constexpr double kSandwichBlockedNSR = 2.8029624386142373;
inline constexpr double kSandwichFreeND = 2.802962438614237;
inline constexpr double kSandwichFreeNS = 4.003338250508804;
inline constexpr double kSandwichFreeNSR = 3.1832303751231374;

inline constexpr double kSandwichNsrA = 3053170.474128848;
inline constexpr double kSandwichNsrD = 1.5908038590366163;
inline constexpr double kSandwichNsrGk = -0.0007777735537200075;
inline constexpr double kSandwichNsrFieldSlopePerVolt = 0.0006407994430957435;
inline constexpr double kSandwichNsrChargeAtKappa001 = -7.777735537200075e-06; // C/m
inline constexpr double kSandwichMassPerLength = 0.1710936;                  // kg/m
inline constexpr double kSandwichNsrFirstShortHz = 170.63272232650422;      // L = 100 mm cantilever

inline constexpr double kSandwichK2ND = 0.34759709038065467;
inline constexpr double kSandwichK2NS = 0.1122777857664119;
inline constexpr double kSandwichK2NSR = 0.13566644035975806;

// Unimorph (data/layups/unimorph.json): force-free state at 100 V
inline constexpr double kUnimorphEpsND = 2.6662905715299875e-05;
inline constexpr double kUnimorphKappaND = 0.07143469760383842;
inline constexpr double kUnimorphEpsNS = 2.0814734676478647e-05;
inline constexpr double kUnimorphKappaNS = 0.05571541439744211;
inline constexpr double kUnimorphEpsNSR = 2.0520892500284635e-05;
inline constexpr double kUnimorphKappaNSR = 0.055033610179573346;
inline constexpr double kUnimorphBlockedND = 0.3155011708059589;  // nF/mm
inline constexpr double kUnimorphBlockedNS = 0.545949891875714;   // nF/mm
inline constexpr double kUnimorphBlockedNSR = 0.4896868727737609; // nF/mm

// Series bimorph, NS closure: tip deflection / classical 3 d31 V L^2 / (2 h^2)
inline constexpr double kSeriesBimorphRatio = 1.0;

} // namespace piezobeam::fixtures
