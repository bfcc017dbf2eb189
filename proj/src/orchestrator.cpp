namespace autotamp {}
