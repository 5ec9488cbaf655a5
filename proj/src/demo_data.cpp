#include "statbench/session.hpp"

namespace statbench::session {

// Fuel economy of 120 cars, generated for the first-run experience.
const std::string_view kDemoCsv = R"csv(manufacturer,class,drv,displ,hwy,cty,cyl,year
ford,suv,r,2.8,32,24,6,1999
chevrolet,suv,4,3.5,28,22,6,2008
hyundai,subcompact,f,2.8,34,25,6,2008
volkswagen,compact,f,3.0,35,26,6,1999
hyundai,midsize,f,4.6,32,23,8,2008
honda,subcompact,r,5.7,25,17,8,1999
volkswagen,compact,f,2.4,40,28,4,1999
subaru,pickup,4,3.3,30,22,6,1999
hyundai,midsize,f,5.7,18,14,8,2008
dodge,pickup,4,3.3,30,22,6,2008
audi,minivan,4,2.8,34,27,6,1999
toyota,compact,f,1.6,48,34,4,2008
toyota,compact,f,5.3,21,17,8,1999
volkswagen,2seater,f,2.5,37,26,4,1999
audi,compact,f,4.6,28,20,8,1999
ford,suv,r,3.0,35,24,6,2008
ford,suv,r,4.6,25,18,8,2008
hyundai,midsize,f,2.5,37,26,4,1999
audi,compact,f,2.8,36,27,6,2008
volkswagen,compact,f,2.8,35,26,6,2008
subaru,compact,4,1.6,32,26,4,1999
toyota,compact,f,2.8,34,26,6,1999
honda,subcompact,4,3.8,28,22,6,1999
chevrolet,midsize,4,3.8,28,20,6,1999
ford,suv,r,3.0,30,22,6,2008
audi,compact,f,2.5,31,24,4,1999
hyundai,suv,f,2.8,32,23,6,1999
honda,subcompact,f,1.8,42,31,4,1999
chevrolet,suv,4,2.8,33,24,6,2008
nissan,pickup,f,2.8,35,24,6,1999
volkswagen,minivan,f,5.3,24,16,8,2008
chevrolet,suv,4,2.4,35,25,4,1999
chevrolet,suv,4,4.6,26,18,8,1999
nissan,compact,f,5.7,23,18,8,1999
honda,subcompact,f,3.3,35,25,6,2008
subaru,compact,4,3.5,30,22,6,2008
chevrolet,suv,4,2.8,27,20,6,1999
subaru,compact,4,5.3,22,16,8,1999
volkswagen,compact,f,2.8,32,25,6,2008
nissan,midsize,f,3.5,30,23,6,2008
hyundai,midsize,f,1.6,44,31,4,1999
subaru,compact,4,3.8,26,19,6,2008
volkswagen,subcompact,f,2.0,37,28,4,2008
nissan,midsize,f,4.0,23,17,8,1999
hyundai,midsize,f,5.7,24,17,8,2008
dodge,2seater,4,5.3,22,16,8,2008
audi,compact,f,3.3,32,25,6,2008
subaru,compact,4,2.4,39,28,4,1999
hyundai,2seater,f,2.0,43,30,4,1999
honda,subcompact,f,1.8,36,27,4,1999
nissan,midsize,f,5.3,25,18,8,2008
audi,midsize,f,2.5,37,27,4,2008
ford,suv,r,1.8,37,28,4,1999
nissan,midsize,f,2.4,39,30,4,2008
ford,suv,r,1.6,37,26,4,2008
volkswagen,compact,f,2.8,36,26,6,1999
hyundai,midsize,f,5.3,20,17,8,2008
volkswagen,compact,f,1.8,39,28,4,2008
toyota,compact,f,3.3,28,22,6,2008
chevrolet,compact,4,3.0,33,24,6,1999
nissan,midsize,f,3.3,33,25,6,2008
honda,subcompact,f,3.8,27,21,6,2008
honda,subcompact,f,1.6,37,27,4,1999
dodge,pickup,f,3.3,31,24,6,2008
dodge,suv,r,5.7,16,13,8,1999
chevrolet,midsize,4,3.8,31,22,6,1999
subaru,suv,4,2.4,37,27,4,1999
hyundai,minivan,r,1.8,37,27,4,2008
honda,compact,f,3.3,32,24,6,2008
audi,compact,f,4.6,24,19,8,2008
ford,minivan,r,4.6,28,20,8,1999
dodge,pickup,4,4.0,28,19,8,2008
ford,suv,r,3.5,26,19,6,2008
dodge,pickup,4,2.8,31,22,6,2008
toyota,compact,f,4.6,24,18,8,2008
audi,subcompact,4,2.0,37,26,4,1999
toyota,compact,f,2.5,36,28,4,1999
dodge,suv,4,2.5,33,26,4,1999
audi,compact,f,3.5,31,24,6,1999
hyundai,midsize,f,2.5,33,25,4,2008
dodge,pickup,4,5.7,21,15,8,1999
subaru,compact,4,5.3,27,20,8,2008
volkswagen,minivan,f,2.4,39,28,4,2008
hyundai,pickup,f,1.6,35,27,4,2008
ford,suv,r,2.5,32,23,4,1999
ford,suv,r,3.0,33,23,6,2008
volkswagen,compact,f,5.7,19,15,8,1999
hyundai,midsize,4,3.5,29,21,6,1999
volkswagen,compact,f,3.3,27,23,6,1999
dodge,pickup,4,3.0,32,23,6,1999
volkswagen,compact,f,3.3,34,24,6,2008
subaru,compact,4,4.6,28,21,8,1999
dodge,pickup,4,1.6,31,26,4,2008
volkswagen,midsize,f,2.5,34,24,4,2008
volkswagen,subcompact,f,4.0,32,22,8,2008
toyota,compact,f,3.3,31,24,6,1999
hyundai,midsize,f,4.0,31,23,8,1999
toyota,compact,4,5.7,18,15,8,2008
dodge,pickup,4,1.8,36,27,4,1999
dodge,pickup,f,4.6,23,16,8,2008
ford,minivan,r,2.5,30,23,4,1999
dodge,pickup,4,3.3,30,23,6,1999
subaru,compact,r,3.5,26,20,6,1999
subaru,compact,4,3.5,37,25,6,1999
hyundai,midsize,r,2.5,35,27,4,2008
chevrolet,suv,4,3.8,29,20,6,2008
nissan,2seater,f,3.8,32,24,6,1999
chevrolet,suv,4,2.4,35,25,4,1999
nissan,subcompact,f,3.3,35,25,6,2008
subaru,compact,4,2.8,31,22,6,1999
honda,subcompact,f,5.3,22,17,8,1999
nissan,midsize,r,1.6,44,30,4,1999
hyundai,midsize,f,2.0,38,27,4,2008
ford,suv,r,4.6,23,17,8,1999
dodge,pickup,4,3.5,32,22,6,2008
ford,2seater,r,3.0,33,24,6,2008
hyundai,minivan,f,2.8,33,25,6,2008
nissan,compact,f,3.5,30,24,6,2008
volkswagen,subcompact,f,3.0,34,25,6,2008
volkswagen,compact,f,2.5,37,27,4,1999
)csv";

}  // namespace statbench::session
