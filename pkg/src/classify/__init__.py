"""Classification engine: flags, Gram recovery, decompositions, affine reduction"""
