def legacy():
    # caf� au lait
    return len("cr�me")
