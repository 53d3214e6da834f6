/* outer /* inner */ int x = 1; */
