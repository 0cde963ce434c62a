#include "golden_data.hpp"

// Generated by tools/make_golden (lambda1 = 20, lambda2 = 10, n = 64,
// tol = 1e-12). Do not edit by hand.
namespace backstep::golden {

const std::array<double, kN + 1> control_gain_uu = {{
    -14.722366150213444,
    -14.717510208512342,
    -14.703267256213975,
    -14.679652311034948,
    -14.646690295925536,
    -14.604415970183139,
    -14.552873833165702,
    -14.492118000721513,
    -14.422212054483966,
    -14.343228864211563,
    -14.255250383383965,
    -14.15836741829464,
    -14.052679370909129,
    -13.938293955785053,
    -13.81532689137576,
    -13.683901566063424,
    -13.544148679289808,
    -13.396205858173113,
    -13.240217250017734,
    -13.076333091139693,
    -12.904709252444283,
    -12.725506762203688,
    -12.5388913064908,
    -12.34503270773147,
    -12.144104381840153,
    -11.936282774403894,
    -11.721746776376344,
    -11.500677119736842,
    -11.273255753559742,
    -11.039665200925576,
    -10.800087897088526,
    -10.554705509293679,
    -10.303698238612807,
    -10.047244104138368,
    -9.7855182098426887,
    -9.5186919943717232,
    -9.2469324640014623,
    -8.9704014089386828,
    -8.6892546030972504,
    -8.4036409874255042,
    -8.1137018368000717,
    -7.8195699104361696,
    -7.5213685856939936,
    -7.2192109750852316,
    -6.9131990262027045,
    -6.6034226042096966,
    -6.289958556433322,
    -5.9728697585083959,
    -5.6522041414143755,
    -5.3279936986379139,
    -5.0002534725772811,
    -4.6689805191821847,
    -4.3341528496930604,
    -3.9957283482076686,
    -3.653643663659476,
    -3.3078130746416496,
    -2.9581273253523195,
    -2.6044524307707708,
    -2.246628449000164,
    -1.8844682185299655,
    -1.5177560579801352,
    -1.1462464256890139,
    -0.76966253629733383,
    -0.38769493126151672,
    0,
}};

const std::array<double, kN + 1> control_gain_uv = {{
    -20.975004888480171,
    -20.969128636270909,
    -20.952017313098484,
    -20.923700518639691,
    -20.88422747270436,
    -20.833666955695964,
    -20.77210722563138,
    -20.69965591203238,
    -20.616439887089697,
    -20.522605114588824,
    -20.418316477174066,
    -20.303757582614477,
    -20.179130549821224,
    -20.04465577545156,
    -19.900571682018658,
    -19.747134448510351,
    -19.584617724601912,
    -19.413312329629569,
    -19.233525937571283,
    -19.045582749360495,
    -18.849823153935951,
    -18.646603379507276,
    -18.436295136590882,
    -18.219285254444667,
    -17.995975312602255,
    -17.766781269278866,
    -17.532133088490472,
    -17.292474367796828,
    -17.048261968646088,
    -16.799965651365103,
    -16.548067716904796,
    -16.293062657513971,
    -16.035456818578528,
    -15.775768073925358,
    -15.514525516952462,
    -15.252269170007873,
    -14.989549714501473,
    -14.726928244294589,
    -14.464976044973293,
    -14.204274401672684,
    -13.945414438181272,
    -13.688996990117069,
    -13.435632515030576,
    -13.185941042354873,
    -12.94055216618939,
    -12.700105083972501,
    -12.465248684168861,
    -12.236641686170833,
    -12.014952835689973,
    -11.800861158994504,
    -11.595056279432761,
    -11.398238799771002,
    -11.211120753967256,
    -11.034426132101673,
    -10.868891482288531,
    -10.715266593506415,
    -10.57431526340139,
    -10.446816155244433,
    -10.333563748358895,
    -10.23536938647784,
    -10.153062428644702,
    -10.087491507435296,
    -10.039525899455022,
    -10.010057013253491,
    -10,
}};

const std::array<double, kSurfCount> control_surface_uu = {{
    0,
    -0.024605982983864402,
    0,
    -0.19583117462117941,
    -0.14673251655396261,
    0,
    -0.66205185411995671,
    -0.58792718716542336,
    -0.36679623733862704,
    0,
    -1.5803909629794743,
    -1.4794954703034435,
    -1.1794629720560448,
    -0.68522345831287568,
    0,
    -3.1342790792273805,
    -3.0025065248058618,
    -2.6122719483669448,
    -1.9748341682925605,
    -1.1026411871197193,
    0,
    -5.5673498876371745,
    -5.3966375948341412,
    -4.8933699869875165,
    -4.0786873167875743,
    -2.9800494920960499,
    -1.6198775303839106,
    0,
    -9.2406046040186922,
    -9.0167794138977158,
    -8.359748314519992,
    -7.3050914324714418,
    -5.9026307176441675,
    -4.2027452984524656,
    -2.237962229110432,
    0,
    -14.722366150213444,
    -14.422212054483966,
    -13.544148679289808,
    -12.144104381840153,
    -10.303698238612807,
    -8.1137018368000717,
    -5.6522041414143755,
    -2.9581273253523195,
    0,
}};

const std::array<double, kSurfCount> control_surface_uv = {{
    0,
    -1.2503328368321978,
    -1.25,
    -2.5102940499153665,
    -2.5057650057206406,
    -2.5,
    -3.8277324741989487,
    -3.8113048028017724,
    -3.7739293196149748,
    -3.75,
    -5.3275560957128594,
    -5.287552306174403,
    -5.1837845342911324,
    -5.0624738819542952,
    -5,
    -7.2532813571241599,
    -7.1736409058572042,
    -6.9557890269376239,
    -6.6587217357977169,
    -6.3790676541277067,
    -6.25,
    -10.016369776251532,
    -9.8757129841485529,
    -9.4805397960726818,
    -8.9046090686745867,
    -8.2675068563705434,
    -7.7314084771492002,
    -7.5,
    -14.263056669486355,
    -14.032866084902791,
    -13.376369470261869,
    -12.385686776006338,
    -11.208598350221379,
    -10.042058889876065,
    -9.1272311064420037,
    -8.75,
    -20.975004888480171,
    -20.616439887089697,
    -19.584617724601912,
    -17.995975312602255,
    -16.035456818578528,
    -13.945414438181272,
    -12.014952835689973,
    -10.57431526340139,
    -10,
}};

const std::array<double, kN + 1> collocated_p1 = {{
    -14.722366150213444,
    -14.717510208512342,
    -14.703267256213975,
    -14.679652311034948,
    -14.646690295925536,
    -14.604415970183139,
    -14.552873833165702,
    -14.492118000721513,
    -14.422212054483966,
    -14.343228864211563,
    -14.255250383383965,
    -14.15836741829464,
    -14.052679370909129,
    -13.938293955785053,
    -13.81532689137576,
    -13.683901566063424,
    -13.544148679289808,
    -13.396205858173113,
    -13.240217250017734,
    -13.076333091139693,
    -12.904709252444283,
    -12.725506762203688,
    -12.5388913064908,
    -12.34503270773147,
    -12.144104381840153,
    -11.936282774403894,
    -11.721746776376344,
    -11.500677119736842,
    -11.273255753559742,
    -11.039665200925576,
    -10.800087897088526,
    -10.554705509293679,
    -10.303698238612807,
    -10.047244104138368,
    -9.7855182098426887,
    -9.5186919943717232,
    -9.2469324640014623,
    -8.9704014089386828,
    -8.6892546030972504,
    -8.4036409874255042,
    -8.1137018368000717,
    -7.8195699104361696,
    -7.5213685856939936,
    -7.2192109750852316,
    -6.9131990262027045,
    -6.6034226042096966,
    -6.289958556433322,
    -5.9728697585083959,
    -5.6522041414143755,
    -5.3279936986379139,
    -5.0002534725772811,
    -4.6689805191821847,
    -4.3341528496930604,
    -3.9957283482076686,
    -3.653643663659476,
    -3.3078130746416496,
    -2.9581273253523195,
    -2.6044524307707708,
    -2.246628449000164,
    -1.8844682185299655,
    -1.5177560579801352,
    -1.1462464256890139,
    -0.76966253629733383,
    -0.38769493126151672,
    0,
}};

const std::array<double, kN + 1> collocated_p2 = {{
    -10.487502444240086,
    -10.484564318135455,
    -10.476008656549242,
    -10.461850259319846,
    -10.44211373635218,
    -10.416833477847982,
    -10.38605361281569,
    -10.34982795601619,
    -10.308219943544849,
    -10.261302557294412,
    -10.209158238587033,
    -10.151878791307238,
    -10.089565274910612,
    -10.02232788772578,
    -9.9502858410093289,
    -9.8735672242551757,
    -9.7923088623009562,
    -9.7066561648147847,
    -9.6167629687856415,
    -9.5227913746802475,
    -9.4249115769679754,
    -9.323301689753638,
    -9.218147568295441,
    -9.1096426272223336,
    -8.9979876563011274,
    -8.8833906346394329,
    -8.7660665442452359,
    -8.646237183898414,
    -8.5241309843230439,
    -8.3999828256825513,
    -8.2740338584523982,
    -8.1465313287569856,
    -8.0177284092892638,
    -7.8878840369626788,
    -7.757262758476231,
    -7.6261345850039364,
    -7.4947748572507367,
    -7.3634641221472945,
    -7.2324880224866464,
    -7.1021372008363421,
    -6.9727072190906361,
    -6.8444984950585344,
    -6.7178162575152882,
    -6.5929705211774365,
    -6.4702760830946948,
    -6.3500525419862504,
    -6.2326243420844305,
    -6.1183208430854163,
    -6.0074764178449866,
    -5.900430579497252,
    -5.7975281397163805,
    -5.6991193998855012,
    -5.605560376983628,
    -5.5172130660508367,
    -5.4344457411442653,
    -5.3576332967532077,
    -5.287157631700695,
    -5.2234080776222163,
    -5.1667818741794473,
    -5.1176846932389202,
    -5.0765312143223511,
    -5.0437457537176478,
    -5.0197629497275109,
    -5.0050285066267453,
    -5,
}};

} // namespace backstep::golden
