#pragma once

// Generated by tests/oracle/oracle.py (scipy DOP853, rtol 1e-13).

namespace oracle {

inline constexpr double kInvestorRateGap[] = {
    0.040000000000000008,
    0.064000000000000001,
    0.071999999999999981,
    0.07920000000000002,
    0.079919999999998631,
    0.080000000000000016};
inline constexpr double kInvestorMprGap[] = {
    0.0094095585382771938,
    0.01505108714097649,
    0.016930896325718939,
    0.018622425363965918,
    0.018791562680060072,
    0.018810355540255962};
inline constexpr double kTwoGroupMprGap[] = {
    0.004699304268817533,
    0.004699304268817533,
    0.011087173376817028,
    0.011087173376817028,
    0.022341201963746605,
    0.034945512749744154,
    0.033171284484766028,
    0.05277304974064502,
    0.040013976345121972,
    0.072042251667319659,
    0.05037551911769849,
    0.094631999869461053,
    0.057717729238306675,
    0.11862290255867831,
    0.064159470115387196,
    0.13666536677492611,
    0.075452562924881367,
    0.17887450762944618,
    0.075452562924881367,
    0.17887450762944618};
inline constexpr double kMaturities[] = {
    0.25,
    0.5,
    1};
inline constexpr double kB[] = {
    0.060966212485145749,
    0.11457237193410731,
    0.20335309532973561};
inline constexpr double kA[] = {
    -0.00038924807420382133,
    -0.0014935105951482627,
    -0.00551428326547949};
inline constexpr double kBRep[] = {
    0.051584981649103606,
    0.096933062944499382,
    0.17198790020214497};
inline constexpr double kBondPrice[] = {
    1.0632767999875343,
    1.123069860378894,
    1.232281560781141};
inline constexpr double kBondPriceRep[] = {
    1.0532855137788604,
    1.1031797796890126,
    1.1932166467602952};
inline constexpr double kAnnuity = 1.1207544786134256;
inline constexpr double kHetB[] = {
    0.07034810299783878,
    0.13221633756463516,
    0.23474754684736948};
inline constexpr double kHetA[] = {
    0.0051758596763758213,
    0.0095266037956191936,
    0.016135854360402727};
inline constexpr double kHetMuS = 0.60000000000000009;

}  // namespace oracle
