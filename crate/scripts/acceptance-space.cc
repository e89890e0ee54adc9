# Fixtures in three variables.
ring QQ[x,y,z]

ideal M = x, y, z
ideal E = x^2, y, z
ideal F = x^2, x*y, y^2, z

graded-core 1
graded-core 2
power M 3
core F
core E
coeff F
adjoint M 2
verify-power-core M 2
verify-power-core M 3
verify-ic-core F
