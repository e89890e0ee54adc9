# Plane fixtures: cores, reductions, closures and adjoints in two variables.
ring QQ[x,y] order grevlex

ideal M = x, y
ideal M2 = x^2, x*y, y^2
ideal A = x^3, x*y, y^2
ideal B = x^4, x^2*y, y^3
ideal C = x^2, x*y, y^3
ideal P = x^2, y^3
ideal Q = x^2, y^2
ideal H = x^4, x^2*y^2, y^4
ideal F = x^3, x^2*y + x*y^2, y^3

graded-core 1
graded-core 2
graded-core 3
colon H M2
core M2
sandwich M2
core A
core B
core C
core F
coeff M2
coeff A
coeff B
coeff F
adjoint M2 1
adjoint A 1
verify-power-core M 2
verify-power-core M 3
verify-power-core A 2
verify-power-core A 3
verify-ic-core M2
verify-ic-core A
closure P
closure Q
normal P
normal A
identity 1
identity 2
identity 3
identity 4
identity 5
identity 6
